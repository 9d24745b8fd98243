//! Monotone graded subroots `M(h1,r1; ...; hn,rn)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root::GradedRoot;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubrootRepr", into = "SubrootRepr")]
pub struct MonotoneSubroot {
    params: Vec<(i64, i64)>,
}

impl MonotoneSubroot {
    /// Requires even entries, `h` strictly decreasing, `r` strictly increasing,
    /// `h_i > r_i` before the last pair and `h_n >= r_n`.
    pub fn new(params: Vec<(i64, i64)>) -> Result<Self> {
        let n = params.len();
        if n == 0 {
            return Err(Error::InvalidParams("empty parameter list".into()));
        }
        for (i, &(h, r)) in params.iter().enumerate() {
            if h % 2 != 0 || r % 2 != 0 {
                return Err(Error::InvalidParams(format!("odd entry in pair {}", i + 1)));
            }
            let ok = if i + 1 == n { h >= r } else { h > r };
            if !ok {
                return Err(Error::InvalidParams(format!("h{0} < r{0} or equal before the end", i + 1)));
            }
        }
        for (i, w) in params.windows(2).enumerate() {
            if !(w[0].0 > w[1].0 && w[0].1 < w[1].1) {
                return Err(Error::InvalidParams(format!(
                    "pairs {} and {} are not strictly monotone",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(MonotoneSubroot { params })
    }

    /// Keeps the pairs not dominated componentwise by another pair, deduplicated
    /// and sorted by `h` descending. Degenerate lists such as `M(2,0;2,2)` reduce
    /// to their valid form (`M(2,2)`).
    pub fn reduced(raw: &[(i64, i64)]) -> Result<Self> {
        let mut frontier: Vec<(i64, i64)> = raw
            .iter()
            .copied()
            .filter(|&c| {
                !raw.iter()
                    .any(|&d| d != c && d.0 >= c.0 && d.1 >= c.1)
            })
            .collect();
        frontier.sort_unstable_by(|a, b| b.cmp(a));
        frontier.dedup();
        MonotoneSubroot::new(frontier)
    }

    pub fn params(&self) -> &[(i64, i64)] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// `(d_bar, d_lower) = (h_1, r_n)`.
    pub fn correction_terms(&self) -> (i64, i64) {
        let first = self.params[0].0;
        let last = self.params[self.params.len() - 1].1;
        (first, last)
    }
}

impl fmt::Display for MonotoneSubroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("M(")?;
        for (i, (h, r)) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{h},{r}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for MonotoneSubroot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("cannot parse {s:?}"));
        let body = s
            .strip_prefix("M(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let params = body
            .split(';')
            .map(|pair| {
                let (h, r) = pair.split_once(',').ok_or_else(bad)?;
                Ok((h.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>>>()?;
        MonotoneSubroot::new(params)
    }
}

#[derive(Serialize, Deserialize)]
struct SubrootRepr {
    params: Vec<[i64; 2]>,
}

impl TryFrom<SubrootRepr> for MonotoneSubroot {
    type Error = Error;
    fn try_from(r: SubrootRepr) -> Result<Self> {
        MonotoneSubroot::new(r.params.into_iter().map(|[h, r]| (h, r)).collect())
    }
}

impl From<MonotoneSubroot> for SubrootRepr {
    fn from(m: MonotoneSubroot) -> Self {
        SubrootRepr {
            params: m.params.into_iter().map(|(h, r)| [h, r]).collect(),
        }
    }
}

/// Candidate `(h, r)` pairs of a symmetric root: each leaf on the left half
/// with the lowest angle between it and its mirror, or `(c, c)` for a middle leaf.
pub fn candidate_pairs(r: &GradedRoot) -> Result<Vec<(i64, i64)>> {
    if !r.is_symmetric() {
        return Err(Error::AsymmetricRoot);
    }
    let leaves = r.leaves();
    let angles = r.angles();
    let k = leaves.len();
    let half = k.div_ceil(2);
    let mut out = vec![(0, 0); half];
    // walk from the middle outward so the angle interval only grows
    let mut running: Option<i64> = None;
    for i in (0..half).rev() {
        let mirror = k - 1 - i;
        if mirror == i {
            out[i] = (leaves[i], leaves[i]);
            continue;
        }
        // the interval [i, mirror) of angles adds angles i and mirror-1
        for a in [angles[i], angles[mirror - 1]] {
            running = Some(running.map_or(a, |m| m.min(a)));
        }
        out[i] = (leaves[i], running.expect("interval nonempty"));
    }
    Ok(out)
}

pub fn extract_monotone(r: &GradedRoot) -> Result<MonotoneSubroot> {
    MonotoneSubroot::reduced(&candidate_pairs(r)?)
}

/// The zigzag of the subroot itself.
pub fn realize_subroot(m: &MonotoneSubroot) -> GradedRoot {
    let p = m.params();
    let n = p.len();
    let (hn, rn) = p[n - 1];
    let outer = &p[..n - 1];
    let mut leaves: Vec<i64> = outer.iter().map(|x| x.0).collect();
    let mut angles: Vec<i64> = outer.iter().map(|x| x.1).collect();
    if hn == rn {
        leaves.push(hn);
    } else {
        leaves.extend([hn, hn]);
        angles.push(rn);
    }
    leaves.extend(outer.iter().rev().map(|x| x.0));
    angles.extend(outer.iter().rev().map(|x| x.1));
    GradedRoot::new(None, leaves, angles).expect("valid parameters give a valid zigzag")
}

pub fn involutive_correction_terms(m: &MonotoneSubroot) -> (i64, i64) {
    m.correction_terms()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(l: &[i64], a: &[i64]) -> GradedRoot {
        GradedRoot::new(None, l.to_vec(), a.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(MonotoneSubroot::new(vec![(4, 0), (2, 2)]).is_ok());
        assert!(MonotoneSubroot::new(vec![(2, 0), (2, 2)]).is_err());
        assert!(MonotoneSubroot::new(vec![(0, 0), (2, 2)]).is_err());
        assert!(MonotoneSubroot::new(vec![(3, 1)]).is_err());
        assert!(MonotoneSubroot::new(vec![(2, 2), (0, 4)]).is_err());
        assert!(MonotoneSubroot::new(vec![(4, 4), (2, 2)]).is_err());
        assert!(MonotoneSubroot::new(vec![]).is_err());
    }

    #[test]
    fn degenerate_list_reduces() {
        assert_eq!(
            MonotoneSubroot::reduced(&[(2, 0), (2, 2)]).unwrap().params(),
            &[(2, 2)]
        );
    }

    #[test]
    fn text_form() {
        let m = MonotoneSubroot::new(vec![(4, 0), (2, 2)]).unwrap();
        assert_eq!(m.to_string(), "M(4,0;2,2)");
        assert_eq!("M(4,0;2,2)".parse::<MonotoneSubroot>().unwrap(), m);
        assert_eq!("M(0,-2)".parse::<MonotoneSubroot>().unwrap().params(), &[(0, -2)]);
        assert!("M(4,0;2)".parse::<MonotoneSubroot>().is_err());
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"params":[[4,0],[2,2]]}"#
        );
    }

    #[test]
    fn extraction_examples() {
        let r = root(&[-6, -2, 0, 0, -2, -6], &[-8, -4, -2, -4, -8]);
        assert_eq!(extract_monotone(&r).unwrap().to_string(), "M(0,-2)");
        assert_eq!(extract_monotone(&root(&[6], &[])).unwrap().to_string(), "M(6,6)");
        assert_eq!(
            extract_monotone(&root(&[0, 2], &[-2])),
            Err(Error::AsymmetricRoot)
        );
    }

    #[test]
    fn realization_examples() {
        let cases = [
            ("M(2,2)", vec![2], vec![]),
            ("M(0,-2)", vec![0, 0], vec![-2]),
            ("M(4,0;2,2)", vec![4, 2, 4], vec![0, 0]),
            ("M(8,0;6,2;4,4)", vec![8, 6, 4, 6, 8], vec![0, 2, 2, 0]),
        ];
        for (text, l, a) in cases {
            let m: MonotoneSubroot = text.parse().unwrap();
            let r = realize_subroot(&m);
            assert_eq!((r.leaves(), r.angles()), (&l[..], &a[..]), "{text}");
            assert_eq!(extract_monotone(&r).unwrap(), m);
        }
    }

    #[test]
    fn correction_terms() {
        for (text, pair) in [("M(0,-2)", (0, -2)), ("M(2,2)", (2, 2)), ("M(4,0;2,2)", (4, 2))] {
            let m: MonotoneSubroot = text.parse().unwrap();
            assert_eq!(involutive_correction_terms(&m), pair);
        }
    }
}
