//! The τ pipeline behind a cache and a per-manifold scan budget.

use groot::local::{class_of_root, class_of_subroot, orient};
use groot::root::{horizon_of, root_from_parts, TauExtrema};
use groot::seifert::SeifertSummary;
use groot::{BrieskornTriple, GradedRoot, LocalClass};
use rayon::prelude::*;

use crate::cache::Cache;
use crate::expr::Term;
use crate::CliError;

pub struct Engine {
    cache: Option<Cache>,
    scan_budget: u64,
}

impl Engine {
    pub fn new(cache: Option<Cache>, scan_budget: u64) -> Self {
        Engine { cache, scan_budget }
    }

    pub fn check_budget(&self, t: &BrieskornTriple) -> Result<u64, CliError> {
        let horizon = horizon_of(t)?;
        if horizon > self.scan_budget {
            return Err(CliError::Usage(format!(
                "{t} needs a scan of {horizon} steps, over the budget of {}",
                self.scan_budget
            )));
        }
        Ok(horizon)
    }

    /// Graded root of the underlying unoriented sphere.
    pub fn root(&self, t: &BrieskornTriple) -> Result<GradedRoot, CliError> {
        let horizon = self.check_budget(t)?;
        let summary = SeifertSummary::of(t)?;
        let cached = self.cache.as_ref().and_then(|c| c.get(t));
        let extrema = match cached {
            Some(e) => e,
            None => {
                let e = TauExtrema::scan(&summary.data, horizon)?;
                if let Some(c) = &self.cache {
                    if let Err(err) = c.put(t, &e) {
                        eprintln!("warning: cache write failed for {t}: {err}");
                    }
                }
                e
            }
        };
        Ok(root_from_parts(summary.shift.sigma, &extrema)?)
    }

    /// Roots of many triples, one task per distinct triple.
    pub fn roots(&self, triples: &[BrieskornTriple]) -> Result<Vec<GradedRoot>, CliError> {
        for t in triples {
            self.check_budget(t)?;
        }
        triples.par_iter().map(|t| self.root(t)).collect()
    }

    /// Local class of an oriented term; family tokens may use their closed form.
    pub fn class(&self, term: &Term, closed_form: bool) -> Result<LocalClass, CliError> {
        let class = match term.family {
            Some((family, n)) if closed_form => class_of_subroot(&family.closed_form_subroot(n)?)?,
            _ => class_of_root(&self.root(&term.triple)?)?,
        };
        Ok(orient(class, term.triple.orientation()))
    }
}
