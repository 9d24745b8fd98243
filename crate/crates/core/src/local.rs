//! Local-equivalence classes of Seifert spheres in the basis
//! `T = h(B(0)) = M(2,2)` and `X_k = h(B(k)) = M(2k,0)`, `k >= 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monotone::{extract_monotone, MonotoneSubroot};
use crate::root::{graded_root_of, GradedRoot};
use crate::seifert::{BrieskornTriple, Orientation};

/// Finitely supported integer vector over `{T} ∪ {X_k}`.
///
/// `used_shift_rule` records whether an atom `M(h,r)` with `r ∉ {0, h}` was
/// rewritten as `X_((h-r)/2) + (r/2) T`. It is carried along by arithmetic and
/// ignored by equality.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LocalClass {
    #[serde(rename = "T")]
    t: i64,
    #[serde(rename = "X", with = "string_keys")]
    x: BTreeMap<u64, i64>,
    #[serde(rename = "shiftRuleUsed")]
    used_shift_rule: bool,
}

impl PartialEq for LocalClass {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.x == other.x
    }
}

impl Eq for LocalClass {}

impl LocalClass {
    pub fn zero() -> Self {
        LocalClass::default()
    }

    /// `n T`.
    pub fn t(n: i64) -> Self {
        LocalClass {
            t: n,
            ..LocalClass::default()
        }
    }

    /// `X_k`, `k >= 1`.
    pub fn x(k: u64) -> Self {
        assert!(k >= 1, "X_k needs k >= 1");
        LocalClass {
            x: [(k, 1)].into(),
            ..LocalClass::default()
        }
    }

    pub fn t_coeff(&self) -> i64 {
        self.t
    }

    pub fn x_coeff(&self, k: u64) -> i64 {
        self.x.get(&k).copied().unwrap_or(0)
    }

    pub fn x_coeffs(&self) -> &BTreeMap<u64, i64> {
        &self.x
    }

    pub fn used_shift_rule(&self) -> bool {
        self.used_shift_rule
    }

    pub fn is_zero(&self) -> bool {
        self.t == 0 && self.x.is_empty()
    }

    pub fn scaled(&self, n: i64) -> Self {
        let mul = |v: i64| v.checked_mul(n).expect("class coefficient overflow");
        let mut out = LocalClass {
            t: mul(self.t),
            x: self.x.iter().map(|(&k, &v)| (k, mul(v))).collect(),
            used_shift_rule: self.used_shift_rule,
        };
        out.x.retain(|_, v| *v != 0);
        out
    }
}

impl AddAssign<&LocalClass> for LocalClass {
    fn add_assign(&mut self, rhs: &LocalClass) {
        self.t = self.t.checked_add(rhs.t).expect("class coefficient overflow");
        for (&k, &v) in &rhs.x {
            let e = self.x.entry(k).or_insert(0);
            *e = e.checked_add(v).expect("class coefficient overflow");
            if *e == 0 {
                self.x.remove(&k);
            }
        }
        self.used_shift_rule |= rhs.used_shift_rule;
    }
}

impl Add for LocalClass {
    type Output = LocalClass;
    fn add(mut self, rhs: LocalClass) -> LocalClass {
        self += &rhs;
        self
    }
}

impl Neg for LocalClass {
    type Output = LocalClass;
    fn neg(self) -> LocalClass {
        self.scaled(-1)
    }
}

impl Sub for LocalClass {
    type Output = LocalClass;
    fn sub(self, rhs: LocalClass) -> LocalClass {
        self + (-rhs)
    }
}

impl Mul<LocalClass> for i64 {
    type Output = LocalClass;
    fn mul(self, rhs: LocalClass) -> LocalClass {
        rhs.scaled(self)
    }
}

impl std::iter::Sum for LocalClass {
    fn sum<I: Iterator<Item = LocalClass>>(iter: I) -> Self {
        iter.fold(LocalClass::zero(), Add::add)
    }
}

/// `X_2 - X_1 + 1*T`; the zero class prints as `0`.
impl fmt::Display for LocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = self
            .x
            .iter()
            .rev()
            .map(|(k, &v)| (v, format!("X_{k}")))
            .collect();
        if self.t != 0 {
            terms.push((self.t, "T".into()));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (coeff, name)) in terms.iter().enumerate() {
            let sign = if *coeff < 0 { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = coeff.unsigned_abs();
            if name == "T" {
                write!(f, "{mag}*T")?;
            } else if mag == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

mod string_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<u64, i64>, s: S) -> Result<S::Ok, S::Error> {
        map.iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect::<BTreeMap<String, i64>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, i64>, D::Error> {
        let raw = BTreeMap::<String, i64>::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let key: u64 = k.parse().map_err(D::Error::custom)?;
            if key == 0 {
                return Err(D::Error::custom("X_0 is not a basis element"));
            }
            if v != 0 {
                out.insert(key, v);
            }
        }
        Ok(out)
    }
}

/// Class of `M(h, r)`: `(h/2) T` for a tower, `X_(h/2)` when `r = 0`, else
/// `X_((h-r)/2) + (r/2) T` with the shift-rule flag raised.
pub fn class_of_atom(h: i64, r: i64) -> Result<LocalClass> {
    if h % 2 != 0 || r % 2 != 0 {
        return Err(Error::OddGrading { h, r });
    }
    if h < r {
        return Err(Error::AtomOrder { h, r });
    }
    if h == r {
        return Ok(LocalClass::t(h / 2));
    }
    let k = u64::try_from((h - r) / 2).expect("h > r");
    if r == 0 {
        return Ok(LocalClass::x(k));
    }
    let mut c = LocalClass::x(k) + LocalClass::t(r / 2);
    c.used_shift_rule = true;
    Ok(c)
}

/// `sum_i M(h_i, r_i) - sum_(i<n) M(h_(i+1), r_i)`.
pub fn class_of_subroot(m: &MonotoneSubroot) -> Result<LocalClass> {
    let p = m.params();
    let mut total = LocalClass::zero();
    for &(h, r) in p {
        total += &class_of_atom(h, r)?;
    }
    for w in p.windows(2) {
        total += &(-class_of_atom(w[1].0, w[0].1)?);
    }
    Ok(total)
}

pub fn class_of_root(r: &GradedRoot) -> Result<LocalClass> {
    class_of_subroot(&extract_monotone(r)?)
}

/// Root → subroot → class, negated for reversed orientation.
pub fn class_of_manifold(t: &BrieskornTriple) -> Result<LocalClass> {
    let c = class_of_root(&graded_root_of(t)?)?;
    Ok(orient(c, t.orientation()))
}

pub fn orient(c: LocalClass, o: Orientation) -> LocalClass {
    match o {
        Orientation::Positive => c,
        Orientation::Negative => -c,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub class: LocalClass,
    pub in_kernel: bool,
}

/// `sum multiplicity · class(triple)`, in the kernel iff zero.
pub fn is_kernel_element(summands: &[(BrieskornTriple, i64)]) -> Result<KernelReport> {
    kernel_with(summands, class_of_manifold)
}

/// As [`is_kernel_element`] with a caller-supplied class oracle (cache, closed forms).
pub fn kernel_with<F>(summands: &[(BrieskornTriple, i64)], mut class_of: F) -> Result<KernelReport>
where
    F: FnMut(&BrieskornTriple) -> Result<LocalClass>,
{
    let mut class = LocalClass::zero();
    for (t, mult) in summands {
        class += &class_of(t)?.scaled(*mult);
    }
    Ok(KernelReport {
        in_kernel: class.is_zero(),
        class,
    })
}

/// Invariants forced to vanish by local triviality.
pub const HEEGAARD_FLOER_VANISHING: &[&str] = &["d_lower", "d", "d_bar", "phi_n (all n >= 1)", "mu_bar"];

/// Further invariants forced to vanish when the kernel element comes from an
/// identity `h(Y_a) = h(Y_b)` between two single Seifert spheres.
pub const SEIBERG_WITTEN_VANISHING: &[&str] = &[
    "alpha", "beta", "gamma", "delta_lower", "delta", "delta_bar", "kappa", "kappa_o_0", "kappa_o_1",
    "kappa_o_2", "kappa_o_3", "kappa_o_4", "kappa_o_5", "kappa_o_6", "kappa_o_7",
];

pub fn vanishing_report(c: &LocalClass, seifert_identity: bool) -> Vec<&'static str> {
    if !c.is_zero() {
        return Vec::new();
    }
    let mut out = HEEGAARD_FLOER_VANISHING.to_vec();
    if seifert_identity {
        out.extend_from_slice(SEIBERG_WITTEN_VANISHING);
    }
    out
}

/// Whether a kernel expression has the shape `Y_a # -Y_b` of two single
/// positively oriented Seifert spheres (multiplicities `+1` and `-1`).
pub fn is_two_sphere_identity(summands: &[(BrieskornTriple, i64)]) -> bool {
    let signed: Vec<i64> = summands
        .iter()
        .map(|(t, m)| m * t.orientation().sign())
        .collect();
    summands.len() == 2 && signed.contains(&1) && signed.contains(&-1)
}
