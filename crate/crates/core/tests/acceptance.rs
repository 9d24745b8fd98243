//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line regardless of output capturing.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use groot::complex::{homology_of, standard_complex_of, tensor_product, zigzag_homology, IotaComplex};
use groot::families::{independence_family_a, independence_family_b, kernel_family_y1, kernel_family_y2, kernel_family_y3, FamilyTerm};
use groot::instanton::{family_scan, independence_certificate, r_zero, ExtendedRational};
use groot::local::{class_of_root, class_of_subroot};
use groot::monotone::extract_monotone;
use groot::root::{graded_root_of, horizon_of, TauProfile};
use groot::seifert::SeifertSummary;
use groot::{BrieskornTriple, Family, GradedRoot, LocalClass, MonotoneSubroot};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn pipeline_subroot(t: &BrieskornTriple) -> Result<(GradedRoot, MonotoneSubroot), String> {
    let r = graded_root_of(t).map_err(|e| format!("{t}: {e}"))?;
    let m = extract_monotone(&r).map_err(|e| format!("{t}: {e}"))?;
    Ok((r, m))
}

fn params(p: &[(i64, i64)]) -> MonotoneSubroot {
    MonotoneSubroot::reduced(p).expect("valid parameter list")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=8u64 {
        let k = n as i64;
        let cases = [
            (Family::B, vec![(2 * k, 0)]),
            (Family::Y1, vec![(4 * k, 0), (2 * k, 2 * k)]),
            (Family::Y2, vec![(4 * k - 2, 0), (2 * k, 2 * k)]),
        ];
        for (family, expected) in cases {
            let (_, m) = pipeline_subroot(&family.triple(n).unwrap())?;
            let expected = params(&expected);
            ensure!(m == expected, "{family}({n}): got {m}, expected {expected}");
            checked += 1;
        }
    }
    for n in 1..=4u64 {
        let (_, m) = pipeline_subroot(&Family::Y3.triple(n).unwrap())?;
        let expected = params(&[(8 * n as i64, 0)]);
        ensure!(m == expected, "Y3({n}): got {m}, expected {expected}");
        checked += 1;
    }
    let (_, m) = pipeline_subroot(&Family::B.triple(0).unwrap())?;
    ensure!(m.to_string() == "M(2,2)", "B(0): got {m}");
    checked += 1;
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{checked} manifolds in {:.1}s", elapsed.as_secs_f64()))
}

/// Straight-line re-derivation of the zigzag of Σ(3,4,13): brute-force
/// Seifert invariants, the Δ recursion, and σ from a dense rational solve.
fn oracle_zigzag(a: [i64; 3]) -> (Vec<i64>, Vec<i64>) {
    let product = a[0] * a[1] * a[2];
    // e0 + Σ w_i/a_i = -1/(a1 a2 a3) with 0 < w_i < a_i
    let mut found = None;
    for w0 in 1..a[0] {
        for w1 in 1..a[1] {
            for w2 in 1..a[2] {
                let num = w0 * a[1] * a[2] + w1 * a[0] * a[2] + w2 * a[0] * a[1] + 1;
                if num % product == 0 {
                    found = Some((-num / product, [w0, w1, w2]));
                }
            }
        }
    }
    let (e0, w) = found.expect("normalization exists");

    let horizon = 2 * product;
    let mut tau = vec![0i64];
    for n in 0..horizon {
        let mut delta = 1 - n * e0;
        for i in 0..3 {
            delta -= (n * w[i] + a[i] - 1) / a[i];
        }
        tau.push(tau.last().unwrap() + delta);
    }
    tau.dedup();
    let mut minima = Vec::new();
    let mut maxima = Vec::new();
    for i in 0..tau.len() {
        let below_prev = i == 0 || tau[i] < tau[i - 1];
        let below_next = i + 1 == tau.len() || tau[i] < tau[i + 1];
        let above_prev = i > 0 && tau[i] > tau[i - 1];
        let above_next = i + 1 < tau.len() && tau[i] > tau[i + 1];
        if below_prev && below_next {
            minima.push(tau[i]);
        }
        if above_prev && above_next {
            maxima.push(tau[i]);
        }
    }

    // star plumbing from negative continued fractions of a_i / w_i
    let mut weights = vec![e0];
    let mut edges = Vec::new();
    for i in 0..3 {
        let (mut p, mut q) = (a[i], w[i]);
        let mut prev = 0usize;
        while q != 0 {
            let c = (p + q - 1) / q;
            weights.push(-c);
            edges.push((prev, weights.len() - 1));
            prev = weights.len() - 1;
            (p, q) = (q, c * q - p);
        }
    }
    let s = weights.len();
    let mut q = vec![vec![BigRational::zero(); s + 1]; s];
    for (i, &wt) in weights.iter().enumerate() {
        q[i][i] = BigRational::from_integer(BigInt::from(wt));
        q[i][s] = BigRational::from_integer(BigInt::from(-wt - 2));
    }
    for &(x, y) in &edges {
        q[x][y] = BigRational::one();
        q[y][x] = BigRational::one();
    }
    let rhs: Vec<BigRational> = q.iter().map(|row| row[s].clone()).collect();
    for col in 0..s {
        let p = (col..s).find(|&r| !q[r][col].is_zero()).unwrap();
        q.swap(col, p);
        for r in 0..s {
            if r != col && !q[r][col].is_zero() {
                let f = &q[r][col] / &q[col][col];
                for c in col..=s {
                    let v = &q[col][c] * &f;
                    q[r][c] -= v;
                }
            }
        }
    }
    let k2: BigRational = (0..s).map(|i| &rhs[i] * (&q[i][s] / &q[i][i])).sum();
    let sigma4 = k2 + BigRational::from_integer(BigInt::from(s as i64));
    let sigma = (sigma4 / BigRational::from_integer(4.into())).to_integer();
    let sigma: i64 = sigma.try_into().unwrap();
    (
        minima.iter().map(|m| sigma - 2 * m).collect(),
        maxima.iter().map(|m| sigma - 2 * m).collect(),
    )
}

fn criterion_2() -> Outcome {
    let t: BrieskornTriple = "3,4,13".parse().unwrap();
    let (r, m) = pipeline_subroot(&t)?;
    let (oracle_leaves, oracle_angles) = oracle_zigzag([3, 4, 13]);
    ensure!(r.leaf_count() == 6, "{} leaves", r.leaf_count());
    ensure!(r.leaves() == [-6, -2, 0, 0, -2, -6], "leaves {:?}", r.leaves());
    ensure!(r.angles() == [-8, -4, -2, -4, -8], "angles {:?}", r.angles());
    ensure!(r.leaves() == oracle_leaves.as_slice(), "oracle leaves {oracle_leaves:?}");
    ensure!(r.angles() == oracle_angles.as_slice(), "oracle angles {oracle_angles:?}");
    ensure!(m.to_string() == "M(0,-2)", "subroot {m}");
    Ok("6 leaves, M(0,-2), zigzag matches the oracle".into())
}

fn criterion_3() -> Outcome {
    let expected = |family: Family, n: u64| -> LocalClass {
        let k = n as i64;
        match family {
            Family::Y1 => LocalClass::x(2 * n) - LocalClass::x(n) + LocalClass::t(k),
            Family::Y2 => LocalClass::x(2 * n - 1) - LocalClass::x(n) + LocalClass::t(k),
            Family::Y3 => LocalClass::x(4 * n),
            Family::B => unreachable!(),
        }
    };
    for n in 1..=50 {
        for family in [Family::Y1, Family::Y2, Family::Y3] {
            let c = class_of_subroot(&family.closed_form_subroot(n).unwrap()).map_err(|e| e.to_string())?;
            ensure!(c == expected(family, n), "{family}({n}) closed form: {c}");
            ensure!(!c.used_shift_rule(), "{family}({n}) used the shift rule");
        }
    }
    for n in 1..=8 {
        for family in [Family::Y1, Family::Y2, Family::Y3] {
            let (r, _) = pipeline_subroot(&family.triple(n).unwrap())?;
            let c = class_of_root(&r).map_err(|e| e.to_string())?;
            ensure!(c == expected(family, n), "{family}({n}) pipeline: {c}");
        }
    }
    Ok("150 closed-form and 24 pipeline classes".into())
}

fn closed_total(terms: &[FamilyTerm]) -> LocalClass {
    terms
        .iter()
        .map(|t| {
            class_of_subroot(&t.family.closed_form_subroot(t.index).unwrap())
                .unwrap()
                .scaled(t.multiplicity)
        })
        .sum()
}

fn criterion_4() -> Outcome {
    let mut controls = 0;
    for n in 1..=50 {
        for (name, terms) in [
            ("Y1", kernel_family_y1(n)),
            ("Y2", kernel_family_y2(n)),
            ("Y3", kernel_family_y3(n)),
        ] {
            let total = closed_total(&terms);
            ensure!(total.is_zero(), "{name} family at n = {n}: {total}");
            for i in 0..terms.len() {
                for step in [-1, 1] {
                    let mut perturbed = terms.clone();
                    perturbed[i].multiplicity += step;
                    let c = closed_total(&perturbed);
                    ensure!(!c.is_zero(), "{name} family at n = {n}: perturbing term {i} by {step} stays zero");
                    controls += 1;
                }
            }
        }
    }
    Ok(format!("150 kernel elements, {controls} negative controls"))
}

fn criterion_5() -> Outcome {
    let check = |family: Vec<BrieskornTriple>, label: &str| -> Result<(), String> {
        let cert = independence_certificate(&family).map_err(|e| e.to_string())?;
        ensure!(cert.verdict, "{label}: verdict false ({:?})", cert.checks);
        for (t, r) in family.iter().zip(&cert.r0_neg) {
            let [a, b, c] = t.exponents();
            let exact = BigRational::new(1.into(), BigInt::from(a) * b * c * 4);
            ensure!(
                r.as_ref() == Some(&ExtendedRational::Finite(exact.clone())),
                "{label}: r0(-{t}) = {r:?}, expected {exact}"
            );
        }
        let distinct: BTreeSet<_> = cert.r0_neg.iter().collect();
        ensure!(distinct.len() == family.len(), "{label}: repeated r0 values");
        Ok(())
    };
    let a = independence_family_a(100).unwrap();
    let b = independence_family_b(25).unwrap();
    ensure!(a.len() == 301 && b.len() == 51, "family sizes {} {}", a.len(), b.len());
    check(a, "B/Y1/Y2")?;
    check(b, "B(4n)/Y3")?;
    let minus_b0: BrieskornTriple = "-2,3,5".parse().unwrap();
    let r = r_zero(&minus_b0).map_err(|e| e.to_string())?;
    ensure!(r.to_string() == "1/120", "r0(-B(0)) = {r}");
    ensure!(r_zero(&minus_b0.reversed()).unwrap() == ExtendedRational::Infinity, "r0(B(0)) finite");
    let scan = family_scan(100).map_err(|e| e.to_string())?;
    Ok(format!(
        "352 certified members, r0(-B(0)) = 1/120, scan ran {} checks",
        scan.parity_checks + scan.not_thirty_checks + scan.interleaving_checks + scan.monotonicity_checks + scan.mod4_checks
    ))
}

/// ∂², J², grading of J and J∂ = ∂J over F[U], computed here from the raw
/// term lists rather than through the complex's own checker.
fn raw_axioms(c: &IotaComplex) -> Result<(), String> {
    let d = c.differential();
    let j = c.involution();
    let apply = |src: &[(usize, u32)]| -> BTreeMap<(usize, u32), u32> {
        let mut out = BTreeMap::new();
        for &(x, p) in src {
            for t in &d[x] {
                *out.entry((t.target, p + t.power)).or_insert(0) += 1;
            }
        }
        out
    };
    for x in 0..d.len() {
        let once: Vec<(usize, u32)> = d[x].iter().map(|t| (t.target, t.power)).collect();
        ensure!(apply(&once).values().all(|v| v % 2 == 0), "∂² ≠ 0 at {x}");
        ensure!(j[j[x]] == x, "J² ≠ id at {x}");
        ensure!(c.generators()[j[x]].grading == c.generators()[x].grading, "J moves grading at {x}");
        let mut dj: Vec<(usize, u32)> = d[j[x]].iter().map(|t| (t.target, t.power)).collect();
        let mut jd: Vec<(usize, u32)> = d[x].iter().map(|t| (j[t.target], t.power)).collect();
        dj.sort_unstable();
        jd.sort_unstable();
        ensure!(dj == jd, "J∂ ≠ ∂J at {x}");
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for t in common::random_triples(601, 300, 100_000) {
        let s = SeifertSummary::of(&t).map_err(|e| format!("{t}: {e}"))?;
        ensure!(s.shift.sigma % 2 == 0, "{t}: σ = {} is odd", s.shift.sigma);
        let r = graded_root_of(&t).map_err(|e| format!("{t}: {e}"))?;
        let mut rev_l = r.leaves().to_vec();
        rev_l.reverse();
        let mut rev_a = r.angles().to_vec();
        rev_a.reverse();
        ensure!(rev_l == r.leaves() && rev_a == r.angles(), "{t}: root not palindromic");
        let c = standard_complex_of(&r).map_err(|e| format!("{t}: {e}"))?;
        raw_axioms(&c).map_err(|e| format!("{t}: {e}"))?;
        c.check_axioms().map_err(|e| format!("{t}: {e}"))?;
    }
    Ok("300 random triples, zero failures".into())
}

fn criterion_7() -> Outcome {
    let mut gradings = 0;
    for t in common::random_triples(701, 50, 3_000) {
        let s = SeifertSummary::of(&t).map_err(|e| e.to_string())?;
        let profile = TauProfile::compute(&s.data, horizon_of(&t).unwrap());
        let r = graded_root_of(&t).map_err(|e| e.to_string())?;
        let c = standard_complex_of(&r).map_err(|e| e.to_string())?;
        let h = zigzag_homology(&r);
        ensure!(
            h.tower_top == s.shift.sigma - 2 * profile.min(),
            "{t}: towerTop {} vs σ - 2 min τ = {}",
            h.tower_top,
            s.shift.sigma - 2 * profile.min()
        );
        let (m, lo, hi) = common::truncation_window(&c);
        for (g, dim) in common::truncated_homology_dims(&c, m, lo, hi) {
            ensure!(
                dim == h.truncated_dimension(m, g),
                "{t}: grading {g}: linear algebra {dim}, module {}",
                h.truncated_dimension(m, g)
            );
            gradings += 1;
        }
    }
    Ok(format!("50 roots, {gradings} gradings compared"))
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(801);
    let unit = standard_complex_of(&GradedRoot::tower(0).unwrap()).unwrap();
    for i in 0..100 {
        let a = common::random_triple(&mut rng, 1_000);
        let b = common::random_triple(&mut rng, 1_000);
        let (ra, rb) = (graded_root_of(&a).unwrap(), graded_root_of(&b).unwrap());
        let (ca, cb) = (standard_complex_of(&ra).unwrap(), standard_complex_of(&rb).unwrap());
        let prod = tensor_product(&ca, &cb);
        prod.check_axioms().map_err(|e| format!("pair {i}: {e}"))?;
        let d = homology_of(&prod).map_err(|e| format!("pair {i}: {e}"))?.tower_top;
        ensure!(
            d == ra.d_invariant() + rb.d_invariant(),
            "{a} # {b}: d = {d}, summands {} + {}",
            ra.d_invariant(),
            rb.d_invariant()
        );
        let with_unit = homology_of(&tensor_product(&ca, &unit)).unwrap();
        ensure!(with_unit == homology_of(&ca).unwrap(), "{a}: identity law fails");
    }
    Ok("100 pairs additive, identity law exact".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("full-pipeline subroots", criterion_1),
        ("Σ(3,4,13) end to end", criterion_2),
        ("class identities", criterion_3),
        ("kernel membership", criterion_4),
        ("independence certificates", criterion_5),
        ("chain axioms", criterion_6),
        ("homology oracle", criterion_7),
        ("tensor d-additivity", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL  {}. {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
