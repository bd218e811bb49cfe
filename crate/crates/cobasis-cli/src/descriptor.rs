//! The basis descriptor mini-language:
//! `family[(k)][@u,l][:asc|:desc][:alt|:sup|:sup-]`
//!
//! * `family` — one of the family names from `cobasis list`, or `x` for the
//!   monomials;
//! * `(k)` — the basis of truncations of the single degree-`k` family
//!   polynomial (band bases);
//! * `@u,l` — classical-family polynomials truncated to the window; `u`/`l`
//!   must agree with `--n`/`--m`;
//! * `:asc` / `:desc` — orientation (descending is the default);
//! * `:alt` — alternating variant; `:sup` / `:sup-` — superposed variant
//!   (with the lower-degree component negated for `:sup-`).

use cobasis::{BasisSpec, Family, Orientation};

pub struct ParsedDescriptor {
    pub family: Family,
    pub source_degree: Option<i64>,
    pub clamp: Option<(i64, i64)>,
    pub orientation: Orientation,
    pub alternating: bool,
    pub superposed: bool,
    pub h_negated: bool,
}

pub fn parse_descriptor(text: &str) -> Result<ParsedDescriptor, String> {
    let mut parts = text.split(':');
    let head = parts.next().unwrap_or_default().trim();
    if head.is_empty() {
        return Err("empty basis descriptor".into());
    }
    let (head, clamp) = match head.split_once('@') {
        Some((h, window)) => {
            let (u, l) = window
                .split_once(',')
                .ok_or_else(|| format!("bad truncation window {window:?}, expected u,l"))?;
            let u: i64 = u.trim().parse().map_err(|e| format!("bad u: {e}"))?;
            let l: i64 = l.trim().parse().map_err(|e| format!("bad l: {e}"))?;
            (h, Some((u, l)))
        }
        None => (head, None),
    };
    let (name, source_degree) = match head.split_once('(') {
        Some((n, rest)) => {
            let deg = rest
                .strip_suffix(')')
                .ok_or_else(|| format!("unclosed source degree in {head:?}"))?;
            let deg: i64 = deg.trim().parse().map_err(|e| format!("bad degree: {e}"))?;
            (n, Some(deg))
        }
        None => (head, None),
    };
    let family = Family::from_name(name.trim()).map_err(|e| e.to_string())?;
    let mut parsed = ParsedDescriptor {
        family,
        source_degree,
        clamp,
        orientation: Orientation::Descending,
        alternating: false,
        superposed: false,
        h_negated: false,
    };
    for flag in parts {
        match flag.trim() {
            "asc" => parsed.orientation = Orientation::Ascending,
            "desc" => parsed.orientation = Orientation::Descending,
            "alt" => parsed.alternating = true,
            "sup" => parsed.superposed = true,
            "sup-" => {
                parsed.superposed = true;
                parsed.h_negated = true;
            }
            other => return Err(format!("unknown flag {other:?}")),
        }
    }
    if parsed.alternating && parsed.superposed {
        return Err("alternation and superposition cannot be combined".into());
    }
    Ok(parsed)
}

/// Resolve a parsed descriptor against the window flags. `partner_step`
/// fixes the step of a monomial hub when the other basis has definite
/// parity.
pub fn to_spec(
    parsed: &ParsedDescriptor,
    n: i64,
    m: i64,
    partner_step: i64,
) -> Result<BasisSpec, String> {
    let fam = parsed.family;
    if let Some((u, l)) = parsed.clamp {
        if u != n || l != m {
            return Err(format!(
                "truncation window @{u},{l} must match --n {n} --m {m}"
            ));
        }
    }
    let spec = if fam == Family::Monomial {
        if parsed.alternating || parsed.superposed || parsed.source_degree.is_some() {
            return Err("monomials take no variant flags".into());
        }
        Ok(BasisSpec::monomial(n, m, partner_step))
    } else if parsed.alternating {
        BasisSpec::alternating(fam, parsed.orientation, n, m)
    } else if parsed.superposed {
        BasisSpec::superposed(fam, parsed.orientation, n, m, parsed.h_negated)
    } else if let Some(degree) = parsed.source_degree {
        BasisSpec::single_poly(fam, degree, parsed.orientation, n, m)
    } else if parsed.clamp.is_some() {
        BasisSpec::truncated_family(fam, parsed.orientation, n, m)
    } else {
        BasisSpec::family(fam, parsed.orientation, n, m)
    };
    spec.map_err(|e| e.to_string())
}

/// Effective step of a descriptor before spec construction, for choosing
/// the monomial hub step.
pub fn effective_step(parsed: &ParsedDescriptor) -> i64 {
    if parsed.family == Family::Monomial || parsed.alternating || parsed.superposed {
        1
    } else {
        parsed.family.step()
    }
}
