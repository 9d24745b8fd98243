//! Manifold terms (`Y1(3)`, `-2,3,7`, `Σ(2,3,5)`) and `#`-separated sums.

use groot::{BrieskornTriple, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub triple: BrieskornTriple,
    /// Set when the term was written as a family token.
    pub family: Option<(Family, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summand {
    pub term: Term,
    pub multiplicity: i64,
}

fn bad(s: &str, why: &str) -> String {
    format!("cannot parse term {s:?}: {why}")
}

/// One oriented manifold: an optional leading `-`, then a family token or triple.
pub fn parse_term(s: &str) -> Result<Term, String> {
    let trimmed = s.trim();
    let (negative, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, trimmed),
    };
    let term = parse_unsigned(body).map_err(|why| bad(s, &why))?;
    Ok(if negative {
        Term {
            triple: term.triple.reversed(),
            ..term
        }
    } else {
        term
    })
}

fn parse_unsigned(body: &str) -> Result<Term, String> {
    if let Some(open) = body.find('(') {
        let inner = body[open + 1..]
            .strip_suffix(')')
            .ok_or("missing closing parenthesis")?;
        let name = body[..open].trim();
        if matches!(name, "" | "Σ" | "Sigma") {
            return raw(inner);
        }
        let family: Family = name.parse().map_err(|_| format!("unknown family {name:?}"))?;
        let n: u64 = inner.trim().parse().map_err(|_| format!("bad index {inner:?}"))?;
        let triple = family.triple(n).map_err(|e| e.to_string())?;
        return Ok(Term {
            triple,
            family: Some((family, n)),
        });
    }
    raw(body)
}

fn raw(body: &str) -> Result<Term, String> {
    if body.trim_start().starts_with('-') {
        return Err("orientation sign inside a triple".into());
    }
    let triple: BrieskornTriple = body.parse().map_err(|e: groot::Error| e.to_string())?;
    Ok(Term {
        triple,
        family: None,
    })
}

/// `Y1(1) # -B(2) # B(1) # -3B(0)`: each summand is an optional sign, an
/// optional multiplicity (`3`, `3*`), and a term. Signs fold into the
/// multiplicity; triples are kept positively oriented.
pub fn parse_sum(expr: &str) -> Result<Vec<Summand>, String> {
    expr.split('#').map(parse_summand).collect()
}

fn parse_summand(s: &str) -> Result<Summand, String> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(format!("empty summand in {s:?}"));
    }
    let (sign, rest) = match trimmed.strip_prefix('-') {
        Some(r) => (-1, r.trim_start()),
        None => (1, trimmed.strip_prefix('+').unwrap_or(trimmed).trim_start()),
    };
    let digits = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    let after = &rest[digits..];
    let (count, body) = if digits == 0 || after.trim_start().starts_with(',') {
        (1, rest)
    } else {
        let count: i64 = rest[..digits].parse().map_err(|_| bad(s, "multiplicity too large"))?;
        let body = after.trim_start();
        (count, body.strip_prefix('*').unwrap_or(body).trim_start())
    };
    if body.is_empty() {
        return Err(bad(s, "missing manifold"));
    }
    let term = parse_term(body)?;
    let multiplicity = sign * count * term.triple.orientation().sign();
    Ok(Summand {
        term: Term {
            triple: term.triple.unoriented(),
            ..term
        },
        multiplicity,
    })
}
