//! Basis-polynomial constructors and the connection-coefficient functions
//! that map each family to and from the monomials.
//!
//! A [`CoeffFn`] evaluates connection coefficients on demand. All evaluators
//! share one indexing convention, so a single matrix layout routine can
//! consume any of them:
//!
//! * to-monomial: `cf(deg, min_deg, k)` is the coefficient of `x^(deg - k*d)`
//!   in the basis element identified by its degree and minimum degree;
//! * from-monomial, descending range: `cf(u, m, k)` is the coefficient of the
//!   element of degree `u - k*d` in the expansion of `x^u`;
//! * from-monomial, ascending range: `cf(n, l, k)` is the coefficient of the
//!   element of minimum degree `n - k*d` in the expansion of `x^l`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::exact::{bin, factorial, frac, pochhammer, pow2, rat, sign, Polynomial, Rational};
use crate::{Error, Result};

/// Polynomial families understood by the registry and the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Monomial,
    Bernstein,
    ZernikeRadial,
    ChebyshevT,
    ChebyshevU,
    ChebyshevV,
    Legendre,
    ShiftedLegendre,
    Laguerre,
    HermitePhysicist,
}

impl Family {
    /// Degree step between consecutive terms of one polynomial: 2 for the
    /// definite-parity families, 1 otherwise.
    pub fn step(self) -> i64 {
        if self.parity_definite() {
            2
        } else {
            1
        }
    }

    pub fn parity_definite(self) -> bool {
        matches!(
            self,
            Family::ZernikeRadial
                | Family::ChebyshevT
                | Family::ChebyshevU
                | Family::Legendre
                | Family::HermitePhysicist
        )
    }

    /// Minimum degree of the degree-`n` family polynomial in monomial form.
    pub fn native_min_degree(self, n: i64) -> i64 {
        match self {
            Family::Monomial | Family::Bernstein | Family::ZernikeRadial => n,
            f if f.parity_definite() => n % 2,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Monomial => "monomial",
            Family::Bernstein => "bernstein",
            Family::ZernikeRadial => "zernike",
            Family::ChebyshevT => "chebyshevt",
            Family::ChebyshevU => "chebyshevu",
            Family::ChebyshevV => "chebyshevv",
            Family::Legendre => "legendre",
            Family::ShiftedLegendre => "shiftedlegendre",
            Family::Laguerre => "laguerre",
            Family::HermitePhysicist => "hermite",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "monomial" | "x" => Family::Monomial,
            "bernstein" => Family::Bernstein,
            "zernike" => Family::ZernikeRadial,
            "chebyshevt" => Family::ChebyshevT,
            "chebyshevu" => Family::ChebyshevU,
            "chebyshevv" => Family::ChebyshevV,
            "legendre" => Family::Legendre,
            "shiftedlegendre" => Family::ShiftedLegendre,
            "laguerre" => Family::Laguerre,
            "hermite" => Family::HermitePhysicist,
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        })
    }
}

/// Which mapping a coefficient function evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToMonomial,
    FromMonomialAscending,
    FromMonomialDescending,
    /// Result of composing two coefficient functions; maps between two
    /// non-monomial bases directly.
    Composed,
}

type Evaluator = Arc<dyn Fn(i64, i64, i64) -> Result<Rational> + Send + Sync>;

/// Domain of the index `k` accepted by a coefficient function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DomainRule {
    /// `0 <= k <= (n - m) / step` against the call arguments.
    Standard,
    /// `0 <= k <= (n - m) / step` against a fixed window; used by the
    /// mixed-orientation compositions, whose full matrices need `k` beyond
    /// the per-element bound.
    Window { n: i64, m: i64 },
}

/// An evaluable connection-coefficient function plus the metadata needed to
/// place its values in a matrix.
#[derive(Clone)]
pub struct CoeffFn {
    pub family: Option<Family>,
    pub direction: Direction,
    /// Degree step of the windows this function is evaluated on.
    pub step: i64,
    label: String,
    domain: DomainRule,
    eval: Evaluator,
}

impl std::fmt::Debug for CoeffFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoeffFn")
            .field("label", &self.label)
            .field("direction", &self.direction)
            .field("step", &self.step)
            .finish()
    }
}

impl CoeffFn {
    pub fn new(
        family: Option<Family>,
        direction: Direction,
        step: i64,
        label: impl Into<String>,
        eval: impl Fn(i64, i64, i64) -> Result<Rational> + Send + Sync + 'static,
    ) -> Self {
        Self {
            family,
            direction,
            step,
            label: label.into(),
            domain: DomainRule::Standard,
            eval: Arc::new(eval),
        }
    }

    /// A coefficient function whose `k` domain is bound to a fixed window
    /// rather than to each call's `(n, m)` pair.
    pub fn window_bound(
        direction: Direction,
        step: i64,
        label: impl Into<String>,
        n: i64,
        m: i64,
        eval: impl Fn(i64, i64, i64) -> Result<Rational> + Send + Sync + 'static,
    ) -> Self {
        Self {
            family: None,
            direction,
            step,
            label: label.into(),
            domain: DomainRule::Window { n, m },
            eval: Arc::new(eval),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluate with the domain check `0 <= k <= (n - m) / step`.
    pub fn at(&self, n: i64, m: i64, k: i64) -> Result<Rational> {
        if n < m || m < 0 {
            return Err(Error::InvalidWindow { n, m, d: self.step });
        }
        if self.step == 2 && (n - m) % 2 != 0 {
            return Err(Error::ParityMismatch(format!(
                "{} evaluated on a window [{m}, {n}] of mixed parity",
                self.label
            )));
        }
        let max = match self.domain {
            DomainRule::Standard => (n - m) / self.step,
            DomainRule::Window { n: wn, m: wm } => (wn - wm) / self.step,
        };
        if k < 0 || k > max {
            return Err(Error::IndexOutOfDomain {
                what: self.label.clone(),
                k,
                max,
            });
        }
        (self.eval)(n, m, k)
    }
}

/// Bernstein polynomial `b_m^n(x)` in monomial form.
pub fn bernstein_poly(n: i64, m: i64) -> Result<Polynomial> {
    if !(0 <= m && m <= n) {
        return Err(Error::InvalidWindow { n, m, d: 1 });
    }
    Ok(Polynomial::from_terms((m..=n).map(|l| {
        (l, bin(n, l) * bin(l, m) * sign(l - m))
    })))
}

/// Zernike radial polynomial `R_n^m(x)` in monomial form.
pub fn zernike_poly(n: i64, m: i64) -> Result<Polynomial> {
    if !(0 <= m && m <= n) {
        return Err(Error::InvalidWindow { n, m, d: 2 });
    }
    if (n - m) % 2 != 0 {
        return Err(Error::ParityMismatch(format!(
            "R_{n}^{m} requires n and m of equal parity"
        )));
    }
    Ok(Polynomial::from_terms((0..=(n - m) / 2).map(|k| {
        (
            n - 2 * k,
            bin(n - k, k) * bin(n - 2 * k, (n - m) / 2 - k) * sign(k),
        )
    })))
}

fn classical_cache() -> &'static Mutex<HashMap<(Family, i64), Polynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, i64), Polynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact monomial expansion of the degree-`n` polynomial of a classical
/// family, from its three-term recurrence.
pub fn classical_poly(family: Family, n: i64) -> Result<Polynomial> {
    if n < 0 {
        return Err(Error::InvalidWindow { n, m: 0, d: 1 });
    }
    match family {
        Family::Monomial => return Ok(Polynomial::term(n, rat(1))),
        Family::Bernstein | Family::ZernikeRadial => {
            return Err(Error::Unsupported(format!(
                "{} polynomials need an explicit minimum degree",
                family.name()
            )))
        }
        _ => {}
    }
    if let Some(p) = classical_cache().lock().unwrap().get(&(family, n)) {
        return Ok(p.clone());
    }
    let one = Polynomial::term(0, rat(1));
    let x = Polynomial::term(1, rat(1));
    let p1 = match family {
        Family::ChebyshevT | Family::Legendre => x.clone(),
        Family::ChebyshevU | Family::HermitePhysicist => Polynomial::term(1, rat(2)),
        Family::ChebyshevV | Family::ShiftedLegendre => {
            Polynomial::from_terms([(1, rat(2)), (0, rat(-1))])
        }
        Family::Laguerre => Polynomial::from_terms([(0, rat(1)), (1, rat(-1))]),
        _ => unreachable!(),
    };
    let mut prev = one;
    let mut cur = p1;
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = match family {
            Family::ChebyshevT | Family::ChebyshevU | Family::ChebyshevV => {
                cur.mul_xpow(1).scale(&rat(2)).sub(&prev)
            }
            Family::Legendre => cur
                .mul_xpow(1)
                .scale(&rat(2 * k + 1))
                .sub(&prev.scale(&rat(k)))
                .scale(&frac(1, k + 1)),
            Family::ShiftedLegendre => {
                // (k+1) P*_{k+1} = (2k+1)(2x - 1) P*_k - k P*_{k-1}
                let shifted = cur.mul_xpow(1).scale(&rat(2)).sub(&cur);
                shifted
                    .scale(&rat(2 * k + 1))
                    .sub(&prev.scale(&rat(k)))
                    .scale(&frac(1, k + 1))
            }
            Family::Laguerre => {
                // (k+1) L_{k+1} = (2k+1 - x) L_k - k L_{k-1}
                cur.scale(&rat(2 * k + 1))
                    .sub(&cur.mul_xpow(1))
                    .sub(&prev.scale(&rat(k)))
                    .scale(&frac(1, k + 1))
            }
            Family::HermitePhysicist => {
                cur.mul_xpow(1).scale(&rat(2)).sub(&prev.scale(&rat(2 * k)))
            }
            _ => unreachable!(),
        };
        prev = cur;
        cur = next;
    }
    classical_cache()
        .lock()
        .unwrap()
        .insert((family, n), cur.clone());
    Ok(cur)
}

/// Identity coefficient function for monomial windows of the given step.
pub fn cf_monomial_identity(step: i64) -> CoeffFn {
    CoeffFn::new(
        Some(Family::Monomial),
        Direction::ToMonomial,
        step,
        "monomial identity",
        |_, _, k| Ok(if k == 0 { rat(1) } else { Rational::zero() }),
    )
}

/// Bernstein polynomials to the monomials.
pub fn cf_bernstein_to_monomial() -> CoeffFn {
    CoeffFn::new(
        Some(Family::Bernstein),
        Direction::ToMonomial,
        1,
        "bernstein -> monomial",
        |n, m, k| Ok(bin(n, n - k) * bin(n - k, m) * sign(n - m - k)),
    )
}

/// Monomials to an ascending Bernstein basis.
pub fn cf_monomial_to_bernstein_asc() -> CoeffFn {
    CoeffFn::new(
        Some(Family::Bernstein),
        Direction::FromMonomialAscending,
        1,
        "monomial -> bernstein (ascending)",
        |n, m, k| Ok(bin(n - m, k) / bin(n, k)),
    )
}

/// Monomials to a descending Bernstein basis.
pub fn cf_monomial_to_bernstein_desc() -> CoeffFn {
    CoeffFn::new(
        Some(Family::Bernstein),
        Direction::FromMonomialDescending,
        1,
        "monomial -> bernstein (descending)",
        |n, m, k| Ok(sign(n - m - k) * bin(n, k) / bin(n, m)),
    )
}

/// Zernike radial polynomials to the monomials.
pub fn cf_zernike_to_monomial() -> CoeffFn {
    CoeffFn::new(
        Some(Family::ZernikeRadial),
        Direction::ToMonomial,
        2,
        "zernike -> monomial",
        |n, m, k| Ok(bin(n - k, k) * bin(n - 2 * k, (n - m) / 2 - k) * sign(k)),
    )
}

/// Monomials to a descending Zernike radial basis.
pub fn cf_monomial_to_zernike_desc() -> CoeffFn {
    CoeffFn::new(
        Some(Family::ZernikeRadial),
        Direction::FromMonomialDescending,
        2,
        "monomial -> zernike (descending)",
        |n, m, k| {
            Ok(frac(n - 2 * k + 1, n - k + 1) * bin(n, k) / bin(n, (n - m) / 2))
        },
    )
}

/// Monomials to an ascending Zernike radial basis.
pub fn cf_monomial_to_zernike_asc() -> CoeffFn {
    CoeffFn::new(
        Some(Family::ZernikeRadial),
        Direction::FromMonomialAscending,
        2,
        "monomial -> zernike (ascending)",
        |n, m, k| {
            let v = (n - m) / 2;
            if k == v {
                // (m+1)_{-1} * m collapses to 1, also at m = 0 where the two
                // factors cannot be evaluated separately.
                return Ok(sign(v) / bin(v + m, v));
            }
            let rising = pochhammer(&rat(m + 1), v - k - 1)?;
            Ok(sign(k) * rising * rat(n - 2 * k) / (factorial(v - k) * bin(v + m, v)))
        },
    )
}

/// Monomials to a descending Zernike radial basis computed through the
/// Jacobi-polynomial route; an independent second implementation of
/// [`cf_monomial_to_zernike_desc`].
pub fn cf_monomial_to_zernike_desc_jacobi() -> CoeffFn {
    fn inner(n: i64, m: i64, k: i64) -> Result<Rational> {
        // coefficient of P_{v-k}^{(m,0)} in the expansion of x^v
        let v = (n - m) / 2;
        let mut total = Rational::zero();
        for l in 0..=k {
            let num = pochhammer(&rat(v + 1 - k), k - l)? * pochhammer(&rat(k - l + 1), v - k)?;
            let den = pochhammer(&rat(m + 2), v - l)? * pochhammer(&rat(v - l + m + 2), v - k)?;
            total += pow2(v - l) * bin(v, v - l) * sign(l) * num / den;
        }
        let lead = pochhammer(&rat(m + 2), v - k - 1)?;
        Ok(rat(n - 2 * k + 1) * lead * total)
    }
    CoeffFn::new(
        Some(Family::ZernikeRadial),
        Direction::FromMonomialDescending,
        2,
        "monomial -> zernike (descending, jacobi route)",
        |n, m, k| {
            let v = (n - m) / 2;
            let mut total = Rational::zero();
            for l in 0..=k {
                total += bin(v, l) * sign(l) * inner(n - 2 * l, m, k - l)?;
            }
            Ok(sign(k) * total * pow2(-v))
        },
    )
}

/// Laguerre coefficient functions: to the monomials (from the recurrence
/// expansion) and from the monomials (closed form).
pub fn cf_laguerre() -> (CoeffFn, CoeffFn) {
    let to = cf_classical_to_monomial(Family::Laguerre);
    let from = CoeffFn::new(
        Some(Family::Laguerre),
        Direction::FromMonomialDescending,
        1,
        "monomial -> laguerre (descending)",
        |n, _m, k| {
            let a = pochhammer(&rat(-n), n - k)?;
            let b = pochhammer(&rat(n - k + 1), k)?;
            Ok(a * b)
        },
    );
    (to, from)
}

/// Shifted Legendre polynomials to the monomials, closed form.
pub fn cf_shifted_legendre_to_monomial() -> CoeffFn {
    CoeffFn::new(
        Some(Family::ShiftedLegendre),
        Direction::ToMonomial,
        1,
        "shifted legendre -> monomial",
        |n, _m, k| Ok(shifted_legendre_alpha(n, k)),
    )
}

/// Closed form `(-1)^k (2n-k)! / (k! ((n-k)!)^2)`.
pub fn shifted_legendre_alpha(n: i64, k: i64) -> Rational {
    sign(k) * factorial(2 * n - k) / (factorial(k) * factorial(n - k) * factorial(n - k))
}

/// The same coefficient as a binomial sum; kept as an independent route.
pub fn shifted_legendre_alpha_sum(n: i64, k: i64) -> Rational {
    let mut total = Rational::zero();
    for v in 0..=k / 2 {
        total += bin(n - 2 * v, k - 2 * v) * bin(2 * n - 2 * v, n) * bin(n, v) * sign(k - v);
    }
    total / pow2(k)
}

/// Chebyshev polynomials of the third kind to the monomials, closed form.
pub fn cf_chebyshev_v_to_monomial() -> CoeffFn {
    CoeffFn::new(
        Some(Family::ChebyshevV),
        Direction::ToMonomial,
        1,
        "chebyshev V -> monomial",
        |n, _m, k| {
            let mut total = Rational::zero();
            for l in 0..=k {
                let num = pochhammer(&rat(1 + n), n - l)?
                    * pochhammer(&(frac(1, 2) - rat(n)), l)?;
                total += pow2(l) * num / (factorial(k - l) * factorial(l));
            }
            Ok(pow2(n) / bin(2 * n, n) * sign(k) / factorial(n - k) * total)
        },
    )
}

/// Monomials to the ascending basis of truncations of the physicists'
/// Hermite polynomial `H_n`; a band function with at most two nonzero
/// entries per column.
pub fn cf_hermite_band(source_degree: i64) -> CoeffFn {
    let nn = source_degree;
    CoeffFn::new(
        Some(Family::HermitePhysicist),
        Direction::FromMonomialAscending,
        2,
        format!("monomial -> truncated H_{nn} (ascending band)"),
        move |n, m, k| {
            if n != nn {
                return Err(Error::BasisMismatch(format!(
                    "band function built for degree {nn}, evaluated at degree {n}"
                )));
            }
            let band = |k: i64| {
                sign(k) * factorial(k) * factorial(n - 2 * k)
                    / (pow2(n - 2 * k) * factorial(n))
            };
            let v = (n - m) / 2;
            if k == v {
                Ok(band(k))
            } else if k == v - 1 {
                Ok(-band(k + 1))
            } else {
                Ok(Rational::zero())
            }
        },
    )
}

/// To-monomial coefficients of a classical family read off the recurrence
/// expansions.
pub fn cf_classical_to_monomial(family: Family) -> CoeffFn {
    let step = family.step();
    CoeffFn::new(
        Some(family),
        Direction::ToMonomial,
        step,
        format!("{} -> monomial", family.name()),
        move |deg, _min, k| Ok(classical_poly(family, deg)?.coeff(deg - k * step)),
    )
}

type ExpansionCache = Mutex<HashMap<(Family, i64), Vec<Rational>>>;

fn expansion_cache() -> &'static ExpansionCache {
    static CACHE: OnceLock<ExpansionCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Expansion of `x^u` in the descending basis of a classical family, found
/// by exact back substitution against the recurrence expansions. Entry `k`
/// multiplies the family polynomial of degree `u - k*step`.
pub fn monomial_expansion(family: Family, u: i64) -> Result<Vec<Rational>> {
    if let Some(col) = expansion_cache().lock().unwrap().get(&(family, u)) {
        return Ok(col.clone());
    }
    let step = family.step();
    let mut remaining = Polynomial::term(u, rat(1));
    let mut col = Vec::new();
    let mut deg = u;
    loop {
        let f = classical_poly(family, deg)?;
        let lead = f.coeff(deg);
        debug_assert!(!lead.is_zero());
        let c = remaining.coeff(deg) / lead;
        remaining = remaining.sub(&f.scale(&c));
        col.push(c);
        if deg < step {
            break;
        }
        deg -= step;
    }
    if !remaining.is_zero() {
        return Err(Error::SingularSystem);
    }
    expansion_cache()
        .lock()
        .unwrap()
        .insert((family, u), col.clone());
    Ok(col)
}

/// From-monomial coefficients of a classical family, derived by exact
/// inversion of the expansions rather than a closed form.
pub fn cf_classical_from_monomial(family: Family) -> CoeffFn {
    let step = family.step();
    CoeffFn::new(
        Some(family),
        Direction::FromMonomialDescending,
        step,
        format!("monomial -> {} (descending)", family.name()),
        move |u, _m, k| {
            let col = monomial_expansion(family, u)?;
            col.get(k as usize).cloned().ok_or(Error::IndexOutOfDomain {
                what: format!("monomial -> {}", family.name()),
                k,
                max: col.len() as i64 - 1,
            })
        },
    )
}

/// To-monomial coefficients for bases made of truncations of one fixed
/// polynomial: `cf(deg, min, k)` reads the coefficient of `x^(deg - k*step)`
/// straight from `f`.
pub fn cf_poly_truncation_to_monomial(f: Polynomial, step: i64, label: impl Into<String>) -> CoeffFn {
    CoeffFn::new(
        None,
        Direction::ToMonomial,
        step,
        label.into(),
        move |deg, _min, k| Ok(f.coeff(deg - k * step)),
    )
}

/// From-monomial coefficients for an ascending basis of truncations of one
/// fixed polynomial: adjacent truncations differ by one term, so the
/// inverse is a bandwidth-1 matrix.
pub fn cf_poly_truncation_from_monomial_asc(
    f: Polynomial,
    step: i64,
    label: impl Into<String>,
) -> CoeffFn {
    CoeffFn::new(
        None,
        Direction::FromMonomialAscending,
        step,
        label.into(),
        move |n, l, k| {
            let v = (n - l) / step;
            let lead = f.coeff(l);
            if lead.is_zero() {
                return Err(Error::BandPrecondition(format!(
                    "source polynomial has no x^{l} term"
                )));
            }
            if k == v {
                Ok(lead.recip())
            } else if k == v - 1 {
                Ok(-lead.recip())
            } else {
                Ok(Rational::zero())
            }
        },
    )
}

/// From-monomial coefficients for a descending basis of truncations of one
/// fixed polynomial.
pub fn cf_poly_truncation_from_monomial_desc(
    f: Polynomial,
    step: i64,
    label: impl Into<String>,
) -> CoeffFn {
    CoeffFn::new(
        None,
        Direction::FromMonomialDescending,
        step,
        label.into(),
        move |u, _m, k| {
            let lead = f.coeff(u);
            if lead.is_zero() {
                return Err(Error::BandPrecondition(format!(
                    "source polynomial has no x^{u} term"
                )));
            }
            if k == 0 {
                Ok(lead.recip())
            } else if k == 1 {
                Ok(-lead.recip())
            } else {
                Ok(Rational::zero())
            }
        },
    )
}
