//! The change-of-basis groupoid: basis descriptions, registration with
//! validation, conversion of polynomials through the monomial hub, and the
//! category/functor law checks.

use std::fmt;

use num_traits::Zero;

use crate::exact::{Parity, Polynomial, Rational};
use crate::families::{
    bernstein_poly, cf_bernstein_to_monomial, cf_classical_from_monomial,
    cf_classical_to_monomial, cf_laguerre, cf_monomial_identity, cf_monomial_to_bernstein_asc,
    cf_monomial_to_bernstein_desc, cf_monomial_to_zernike_asc, cf_monomial_to_zernike_desc,
    cf_poly_truncation_from_monomial_asc, cf_poly_truncation_from_monomial_desc,
    cf_poly_truncation_to_monomial, cf_zernike_to_monomial, classical_poly, zernike_poly, CoeffFn,
    Family,
};
use crate::matrices::{
    build_matrix, invert_triangular, matmul, scan_shape, CobMatrix, MatrixKind, Orientation,
    ParityKind,
};
use crate::transforms::{build_alternating_matrix, superpose_matrix, truncate_matrix};
use crate::{Error, Result};

/// What the elements of a basis are.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisKind {
    /// A family on its native window (no truncation needed).
    Family(Family),
    /// Classical-family polynomials truncated to the basis window
    /// (descending only).
    TruncatedFamily(Family),
    /// Truncations of the single family polynomial of the given degree.
    SinglePoly { family: Family, degree: i64 },
    /// Explicit basis polynomials.
    Custom { name: String, polys: Vec<Polynomial> },
}

/// Metadata describing one finite polynomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSpec {
    pub kind: BasisKind,
    pub orientation: Orientation,
    /// Degree window `[m, n]`.
    pub n: i64,
    pub m: i64,
    /// Step of the spanned monomial window: 1 or 2.
    pub step: i64,
    pub alternating: bool,
    pub superposed: bool,
    /// For superposed bases: the lower-degree component enters negated.
    pub h_negated: bool,
}

impl BasisSpec {
    fn base(kind: BasisKind, orientation: Orientation, n: i64, m: i64, step: i64) -> Result<Self> {
        if n < m || m < 0 || !(step == 1 || step == 2) || (step == 2 && (n - m) % 2 != 0) {
            return Err(Error::InvalidWindow { n, m, d: step });
        }
        Ok(Self {
            kind,
            orientation,
            n,
            m,
            step,
            alternating: false,
            superposed: false,
            h_negated: false,
        })
    }

    /// Monomial window basis (the exchange hub). Monomial bases are both
    /// ascending and descending; a canonical orientation is stored.
    pub fn monomial(n: i64, m: i64, step: i64) -> Self {
        Self::base(
            BasisKind::Family(Family::Monomial),
            Orientation::Descending,
            n,
            m,
            step,
        )
        .expect("monomial window")
    }

    /// A family basis on a native window.
    pub fn family(family: Family, orientation: Orientation, n: i64, m: i64) -> Result<Self> {
        let step = family.step();
        let spec = Self::base(BasisKind::Family(family), orientation, n, m, step)?;
        match family {
            Family::Monomial | Family::Bernstein => {}
            Family::ZernikeRadial => {}
            f => {
                if orientation == Orientation::Ascending {
                    return Err(Error::InvalidBasis(format!(
                        "{} forms ascending bases only through truncations of a single polynomial",
                        f.name()
                    )));
                }
                if m != f.native_min_degree(m) {
                    return Err(Error::InvalidBasis(format!(
                        "{} elements reach below degree {m}; use a truncated family basis",
                        f.name()
                    )));
                }
            }
        }
        Ok(spec)
    }

    /// Classical-family polynomials truncated to the window (descending).
    pub fn truncated_family(
        family: Family,
        orientation: Orientation,
        n: i64,
        m: i64,
    ) -> Result<Self> {
        if matches!(
            family,
            Family::Monomial | Family::Bernstein | Family::ZernikeRadial
        ) {
            return Err(Error::InvalidBasis(format!(
                "{} windows are native; truncation does not apply",
                family.name()
            )));
        }
        if orientation == Orientation::Ascending {
            return Err(Error::InvalidBasis(
                "an ascending basis of truncations uses a single source polynomial".into(),
            ));
        }
        Self::base(BasisKind::TruncatedFamily(family), orientation, n, m, family.step())
    }

    /// Truncations of the degree-`degree` polynomial of a family.
    pub fn single_poly(
        family: Family,
        degree: i64,
        orientation: Orientation,
        n: i64,
        m: i64,
    ) -> Result<Self> {
        if degree < n {
            return Err(Error::InvalidBasis(format!(
                "source polynomial degree {degree} is below the window top {n}"
            )));
        }
        Self::base(
            BasisKind::SinglePoly { family, degree },
            orientation,
            n,
            m,
            family.step(),
        )
    }

    /// Explicit basis polynomials, validated at registration.
    pub fn custom(
        name: impl Into<String>,
        polys: Vec<Polynomial>,
        orientation: Orientation,
        n: i64,
        m: i64,
        step: i64,
    ) -> Result<Self> {
        Self::base(
            BasisKind::Custom {
                name: name.into(),
                polys,
            },
            orientation,
            n,
            m,
            step,
        )
    }

    /// Alternating variant of a parity-definite family on a step-1 window.
    pub fn alternating(family: Family, orientation: Orientation, n: i64, m: i64) -> Result<Self> {
        if !family.parity_definite() {
            return Err(Error::ParityMismatch(format!(
                "alternation needs a definite-parity family, not {}",
                family.name()
            )));
        }
        let mut spec = Self::base(BasisKind::Family(family), orientation, n, m, 1)?;
        spec.alternating = true;
        Ok(spec)
    }

    /// Superposed variant built on the matching alternating basis.
    pub fn superposed(
        family: Family,
        orientation: Orientation,
        n: i64,
        m: i64,
        h_negated: bool,
    ) -> Result<Self> {
        let mut spec = Self::alternating(family, orientation, n, m)?;
        spec.alternating = false;
        spec.superposed = true;
        spec.h_negated = h_negated;
        Ok(spec)
    }

    pub fn dim(&self) -> Result<usize> {
        Ok(((self.n - self.m) / self.step + 1) as usize)
    }

    /// Degrees of the spanned monomial window, lowest first.
    pub fn window_degrees(&self) -> Vec<i64> {
        (0..)
            .map(|j| self.m + j * self.step)
            .take_while(|&d| d <= self.n)
            .collect()
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.kind, BasisKind::Family(Family::Monomial))
            && !self.alternating
            && !self.superposed
    }

    /// Span compatibility: equal windows and step. Monomial hubs compare
    /// regardless of stored orientation.
    pub fn compatible(&self, other: &Self) -> bool {
        if self.is_monomial() && other.is_monomial() {
            return self.n == other.n && self.m == other.m && self.step == other.step;
        }
        self == other
    }

    /// The family behind this spec, when there is one.
    pub fn family_of(&self) -> Option<Family> {
        match &self.kind {
            BasisKind::Family(f) | BasisKind::TruncatedFamily(f) => Some(*f),
            BasisKind::SinglePoly { family, .. } => Some(*family),
            BasisKind::Custom { .. } => None,
        }
    }

    /// Alternating element parameters: (degree, min degree) of element `j`.
    fn alternating_element_window(&self, j: i64) -> (i64, i64) {
        match self.orientation {
            Orientation::Descending => (self.m + j, self.m + j.rem_euclid(2)),
            Orientation::Ascending => {
                (self.n - (self.n - self.m - j).rem_euclid(2), self.m + j)
            }
        }
    }

    fn family_element(&self, family: Family, deg: i64, min: i64) -> Result<Polynomial> {
        match family {
            Family::Monomial => Ok(Polynomial::term(deg, crate::exact::rat(1))),
            Family::Bernstein => bernstein_poly(deg, min),
            Family::ZernikeRadial => zernike_poly(deg, min),
            f => {
                let p = classical_poly(f, deg)?;
                if f.native_min_degree(deg) >= min {
                    Ok(p)
                } else {
                    p.truncate(deg, min)
                }
            }
        }
    }

    /// Expand the basis elements in monomial form, in basis order: index `j`
    /// carries degree `m + j*step` (descending) or minimum degree `m +
    /// j*step` (ascending).
    pub fn elements(&self) -> Result<Vec<Polynomial>> {
        let dim = self.dim()? as i64;
        if self.superposed {
            let mut alt = self.clone();
            alt.superposed = false;
            alt.alternating = true;
            alt.h_negated = false;
            let a = alt.elements()?;
            let s = if self.h_negated {
                crate::exact::rat(-1)
            } else {
                crate::exact::rat(1)
            };
            let last = a.len() - 1;
            return Ok((0..a.len())
                .map(|j| match self.orientation {
                    Orientation::Descending if j == 0 => a[0].clone(),
                    Orientation::Descending => a[j].add(&a[j - 1].scale(&s)),
                    Orientation::Ascending if j == last => a[last].clone(),
                    Orientation::Ascending => a[j].add(&a[j + 1].scale(&s)),
                })
                .collect());
        }
        if self.alternating {
            let family = self.family_of().ok_or_else(|| {
                Error::InvalidBasis("alternating bases need a family".into())
            })?;
            return (0..dim)
                .map(|j| {
                    let (deg, min) = self.alternating_element_window(j);
                    let p = self.family_element(family, deg, min)?;
                    if p.min_degree()? < min {
                        p.truncate(deg, min)
                    } else {
                        Ok(p)
                    }
                })
                .collect();
        }
        match &self.kind {
            BasisKind::Family(f) => (0..dim)
                .map(|j| match self.orientation {
                    Orientation::Descending => {
                        self.family_element(*f, self.m + j * self.step, self.m)
                    }
                    Orientation::Ascending => {
                        self.family_element(*f, self.n, self.m + j * self.step)
                    }
                })
                .collect(),
            BasisKind::TruncatedFamily(f) => (0..dim)
                .map(|j| {
                    let deg = self.m + j * self.step;
                    classical_poly(*f, deg)?.truncate(deg, self.m)
                })
                .collect(),
            BasisKind::SinglePoly { family, degree } => {
                let f = classical_poly(*family, *degree)?;
                (0..dim)
                    .map(|j| match self.orientation {
                        Orientation::Ascending => f.truncate(self.n, self.m + j * self.step),
                        Orientation::Descending => f.truncate(self.m + j * self.step, self.m),
                    })
                    .collect()
            }
            BasisKind::Custom { polys, .. } => {
                if polys.len() != dim as usize {
                    return Err(Error::InvalidBasis(format!(
                        "custom basis has {} polynomials, window needs {dim}",
                        polys.len()
                    )));
                }
                Ok(polys.clone())
            }
        }
    }

    /// Short label of element `j`, for human-readable output.
    pub fn element_label(&self, j: usize) -> String {
        let j = j as i64;
        if self.superposed {
            return format!("f[{},{}]", self.n, self.m + j);
        }
        if self.alternating {
            let (deg, min) = self.alternating_element_window(j);
            return self.plain_label(deg, min);
        }
        match self.orientation {
            Orientation::Descending => self.plain_label(self.m + j * self.step, self.m),
            Orientation::Ascending => self.plain_label(self.n, self.m + j * self.step),
        }
    }

    fn plain_label(&self, deg: i64, min: i64) -> String {
        match &self.kind {
            BasisKind::Family(Family::Monomial) => format!("x^{deg}"),
            BasisKind::Family(Family::Bernstein) => format!("b_{min}^{deg}"),
            BasisKind::Family(Family::ZernikeRadial) => format!("R_{deg}^{min}"),
            BasisKind::Family(f) => {
                if f.native_min_degree(deg) >= min {
                    format!("{}_{deg}", short_family(*f))
                } else {
                    format!("{}_{deg}[{min}..{deg}]", short_family(*f))
                }
            }
            BasisKind::TruncatedFamily(f) => format!("{}_{deg}[{min}..{deg}]", short_family(*f)),
            BasisKind::SinglePoly { family, degree } => {
                format!("{}_{degree}[{min}..{deg}]", short_family(*family))
            }
            BasisKind::Custom { name, .. } => format!("{name}[{}]", deg.min(min)),
        }
    }

    /// The basis produced by the truncation functor: drop the first `k1` and
    /// last `k2` elements and truncate the survivors to the smaller window.
    pub fn truncated_view(&self, k1: usize, k2: usize) -> Result<BasisSpec> {
        let dim = self.dim()?;
        if k1 + k2 == 0 || k1 + k2 >= dim {
            return Err(Error::WindowExhausted { k1, k2, dim });
        }
        let new_m = self.m + self.step * k1 as i64;
        let new_n = self.n - self.step * k2 as i64;
        if self.is_monomial() {
            return Ok(BasisSpec::monomial(new_n, new_m, self.step));
        }
        let native = match (&self.kind, self.orientation, self.alternating || self.superposed) {
            (BasisKind::TruncatedFamily(f), Orientation::Descending, false) => {
                Some(BasisSpec::truncated_family(*f, self.orientation, new_n, new_m)?)
            }
            (BasisKind::Family(f), Orientation::Descending, false)
                if f.step() == self.step && !matches!(f, Family::Bernstein | Family::ZernikeRadial) =>
            {
                Some(BasisSpec::truncated_family(*f, self.orientation, new_n, new_m)?)
            }
            (BasisKind::SinglePoly { family, degree }, _, false) => Some(BasisSpec::single_poly(
                *family,
                *degree,
                self.orientation,
                new_n,
                new_m,
            )?),
            _ => None,
        };
        if let Some(spec) = native {
            return Ok(spec);
        }
        let elements = self.elements()?;
        let polys: Result<Vec<Polynomial>> = elements[k1..dim - k2]
            .iter()
            .map(|p| p.truncate(new_n, new_m))
            .collect();
        BasisSpec::custom(
            format!("tr[{k1},{k2}]({self})"),
            polys?,
            self.orientation,
            new_n,
            new_m,
            self.step,
        )
    }
}

fn short_family(f: Family) -> &'static str {
    match f {
        Family::ChebyshevT => "T",
        Family::ChebyshevU => "U",
        Family::ChebyshevV => "V",
        Family::Legendre => "P",
        Family::ShiftedLegendre => "P*",
        Family::Laguerre => "L",
        Family::HermitePhysicist => "H",
        Family::Monomial => "x",
        Family::Bernstein => "b",
        Family::ZernikeRadial => "R",
    }
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.kind {
            BasisKind::Family(fam) => fam.name().to_string(),
            BasisKind::TruncatedFamily(fam) => format!("{}@{},{}", fam.name(), self.n, self.m),
            BasisKind::SinglePoly { family, degree } => format!("{}({degree})", family.name()),
            BasisKind::Custom { name, .. } => format!("custom:{name}"),
        };
        let orient = match self.orientation {
            Orientation::Ascending => ":asc",
            Orientation::Descending => ":desc",
        };
        let flag = if self.alternating {
            ":alt"
        } else if self.superposed {
            if self.h_negated {
                ":sup-"
            } else {
                ":sup"
            }
        } else {
            ""
        };
        let step = if self.step == 2 { ":2" } else { "" };
        write!(f, "{name}{orient}{flag}[{}..{}{step}]", self.m, self.n)
    }
}

/// Exact coordinates of a polynomial with respect to a basis, in basis
/// order (element `j` as in [`BasisSpec::elements`]).
#[derive(Debug, Clone, PartialEq)]
pub struct CoordVector {
    pub basis: BasisSpec,
    pub coords: Vec<Rational>,
}

impl CoordVector {
    /// Rebuild the polynomial from its coordinates.
    pub fn reconstruct(&self) -> Result<Polynomial> {
        let elements = self.basis.elements()?;
        if elements.len() != self.coords.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a {}-element basis",
                self.coords.len(),
                elements.len()
            )));
        }
        let mut acc = Polynomial::zero();
        for (c, e) in self.coords.iter().zip(&elements) {
            acc = acc.add(&e.scale(c));
        }
        Ok(acc)
    }
}

/// How to treat a mixed-parity polynomial aimed at a definite-parity basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityPolicy {
    /// Split into even and odd parts on their natural windows.
    SplitAllowed,
    /// Report the parity violation as an error.
    Strict,
}

/// Result of a conversion: one coordinate vector, or two after an automatic
/// parity split.
#[derive(Debug, Clone, PartialEq)]
pub enum Conversion {
    Single(CoordVector),
    Split { even: CoordVector, odd: CoordVector },
}

/// Handle to a registered basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisId(usize);

struct RegisteredBasis {
    spec: BasisSpec,
    elements: Vec<Polynomial>,
}

/// A set of validated bases, closed under exact conversion through the
/// monomial hub.
#[derive(Default)]
pub struct Registry {
    bases: Vec<RegisteredBasis>,
}

/// Build the to-monomial matrix of a spec (columns are the elements in
/// monomial coordinates).
pub fn to_monomial_matrix(spec: &BasisSpec) -> Result<CobMatrix> {
    let hub = BasisSpec::monomial(spec.n, spec.m, if spec.alternating || spec.superposed { 1 } else { spec.step });
    if spec.superposed {
        let mut alt = spec.clone();
        alt.superposed = false;
        alt.alternating = true;
        alt.h_negated = false;
        let m_alt = to_monomial_matrix(&alt)?;
        let mut sup = superpose_matrix(&m_alt, spec.h_negated)?;
        sup.domain = spec.clone();
        return Ok(sup);
    }
    if spec.alternating {
        let family = spec
            .family_of()
            .ok_or_else(|| Error::InvalidBasis("alternating bases need a family".into()))?;
        let cf = family_to_monomial_cf(family)?;
        return build_alternating_matrix(
            spec.orientation,
            &cf,
            spec.n,
            spec.m,
            spec.clone(),
            hub,
        );
    }
    match spec_to_monomial_cf(spec)? {
        Some(cf) => {
            let kind = MatrixKind::new(spec.orientation, spec.orientation, parity_kind(spec.step));
            build_matrix(kind, &cf, spec.n, spec.m, spec.clone(), hub)
        }
        None => {
            // custom basis: expand the elements directly
            let elements = spec.elements()?;
            let degrees = spec.window_degrees();
            let dim = degrees.len();
            let mut grid = vec![vec![Rational::zero(); dim]; dim];
            for (j, e) in elements.iter().enumerate() {
                for (i, &d) in degrees.iter().enumerate() {
                    grid[i][j] = e.coeff(d);
                }
            }
            let shape = scan_shape(&grid);
            CobMatrix::from_grid(grid, spec.clone(), hub, shape)
        }
    }
}

/// Build the from-monomial matrix of a spec (maps monomial coordinates to
/// basis coordinates).
pub fn from_monomial_matrix(spec: &BasisSpec) -> Result<CobMatrix> {
    let hub = BasisSpec::monomial(spec.n, spec.m, if spec.alternating || spec.superposed { 1 } else { spec.step });
    if spec.superposed {
        return invert_triangular(&to_monomial_matrix(spec)?);
    }
    if spec.alternating {
        let family = spec
            .family_of()
            .ok_or_else(|| Error::InvalidBasis("alternating bases need a family".into()))?;
        let cf = family_from_monomial_cf(family, spec.orientation)?;
        return build_alternating_matrix(
            spec.orientation,
            &cf,
            spec.n,
            spec.m,
            hub,
            spec.clone(),
        );
    }
    match spec_from_monomial_cf(spec)? {
        Some(cf) => {
            let kind = MatrixKind::new(spec.orientation, spec.orientation, parity_kind(spec.step));
            build_matrix(kind, &cf, spec.n, spec.m, hub, spec.clone())
        }
        None => {
            let to = to_monomial_matrix(spec)?;
            if to.is_triangular() {
                invert_triangular(&to)
            } else {
                let inv = crate::oracle::gauss_invert(&to.to_grid())?;
                let shape = scan_shape(&inv);
                CobMatrix::from_grid(inv, hub, spec.clone(), shape)
            }
        }
    }
}

fn parity_kind(step: i64) -> ParityKind {
    if step == 2 {
        ParityKind::Definite
    } else {
        ParityKind::NotDefinite
    }
}

fn family_to_monomial_cf(family: Family) -> Result<CoeffFn> {
    Ok(match family {
        Family::Monomial => cf_monomial_identity(1),
        Family::Bernstein => cf_bernstein_to_monomial(),
        Family::ZernikeRadial => cf_zernike_to_monomial(),
        f => cf_classical_to_monomial(f),
    })
}

fn family_from_monomial_cf(family: Family, orientation: Orientation) -> Result<CoeffFn> {
    Ok(match (family, orientation) {
        (Family::Monomial, _) => cf_monomial_identity(1),
        (Family::Bernstein, Orientation::Ascending) => cf_monomial_to_bernstein_asc(),
        (Family::Bernstein, Orientation::Descending) => cf_monomial_to_bernstein_desc(),
        (Family::ZernikeRadial, Orientation::Ascending) => cf_monomial_to_zernike_asc(),
        (Family::ZernikeRadial, Orientation::Descending) => cf_monomial_to_zernike_desc(),
        (Family::Laguerre, Orientation::Descending) => cf_laguerre().1,
        (f, Orientation::Descending) => cf_classical_from_monomial(f),
        (f, Orientation::Ascending) if f.parity_definite() => {
            // ascending windows of one definite-parity family polynomial are
            // truncations of that single polynomial: the band inverse applies,
            // with the source polynomial resolved per call from the degree
            // argument (alternating layouts interleave two source degrees)
            CoeffFn::new(
                Some(f),
                crate::families::Direction::FromMonomialAscending,
                2,
                format!("monomial -> {} (ascending band)", f.name()),
                move |d, l, k| {
                    let p = classical_poly(f, d)?;
                    let lead = p.coeff(l);
                    if lead.is_zero() {
                        return Err(Error::BandPrecondition(format!(
                            "{}_{d} has no x^{l} term",
                            f.name()
                        )));
                    }
                    let v = (d - l) / 2;
                    Ok(if k == v {
                        lead.recip()
                    } else if k == v - 1 {
                        -lead.recip()
                    } else {
                        Rational::zero()
                    })
                },
            )
        }
        (f, Orientation::Ascending) => {
            return Err(Error::InvalidBasis(format!(
                "{} has no native ascending basis",
                f.name()
            )))
        }
    })
}

pub(crate) fn spec_to_monomial_cf(spec: &BasisSpec) -> Result<Option<CoeffFn>> {
    Ok(match &spec.kind {
        BasisKind::Family(Family::Monomial) => Some(cf_monomial_identity(spec.step)),
        BasisKind::Family(f) | BasisKind::TruncatedFamily(f) => Some(family_to_monomial_cf(*f)?),
        BasisKind::SinglePoly { family, degree } => Some(cf_poly_truncation_to_monomial(
            classical_poly(*family, *degree)?,
            spec.step,
            format!("truncated {}_{degree} -> monomial", short_family(*family)),
        )),
        BasisKind::Custom { .. } => None,
    })
}

pub(crate) fn spec_from_monomial_cf(spec: &BasisSpec) -> Result<Option<CoeffFn>> {
    Ok(match &spec.kind {
        BasisKind::Family(Family::Monomial) => Some(cf_monomial_identity(spec.step)),
        BasisKind::Family(f) | BasisKind::TruncatedFamily(f) => {
            Some(family_from_monomial_cf(*f, spec.orientation)?)
        }
        BasisKind::SinglePoly { family, degree } => {
            let f = classical_poly(*family, *degree)?;
            let label = format!("monomial -> truncated {}_{degree}", short_family(*family));
            Some(match spec.orientation {
                Orientation::Ascending => {
                    cf_poly_truncation_from_monomial_asc(f, spec.step, label)
                }
                Orientation::Descending => {
                    cf_poly_truncation_from_monomial_desc(f, spec.step, label)
                }
            })
        }
        BasisKind::Custom { .. } => None,
    })
}

/// Convert a polynomial to coordinates in the given basis, without requiring
/// registration.
pub fn convert(p: &Polynomial, to: &BasisSpec, policy: ParityPolicy) -> Result<Conversion> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if to.step == 2 && p.parity()? == Parity::None {
        match policy {
            ParityPolicy::Strict => {
                return Err(Error::OutOfSpan(
                    "polynomial has mixed parity, target basis has definite parity".into(),
                ))
            }
            ParityPolicy::SplitAllowed => {
                let (even, odd) = p.parity_split();
                let part = |q: &Polynomial| -> Result<CoordVector> {
                    let spec = natural_window_spec(to, q)?;
                    match convert(q, &spec, ParityPolicy::Strict)? {
                        Conversion::Single(v) => Ok(v),
                        Conversion::Split { .. } => unreachable!(),
                    }
                };
                return Ok(Conversion::Split {
                    even: part(&even)?,
                    odd: part(&odd)?,
                });
            }
        }
    }
    // span check
    let window = to.window_degrees();
    for (k, _) in p.iter() {
        if !window.contains(&k) {
            return Err(Error::OutOfSpan(format!(
                "degree {k} is outside the window [{}..{} step {}]",
                to.m, to.n, to.step
            )));
        }
    }
    let from_mono = from_monomial_matrix(to)?;
    let coords = (0..from_mono.dim())
        .map(|i| {
            window
                .iter()
                .enumerate()
                .map(|(j, &d)| from_mono.at(i, j) * p.coeff(d))
                .sum()
        })
        .collect();
    Ok(Conversion::Single(CoordVector {
        basis: to.clone(),
        coords,
    }))
}

/// Same family and orientation as `like`, on the natural window of `q`.
fn natural_window_spec(like: &BasisSpec, q: &Polynomial) -> Result<BasisSpec> {
    let family = like
        .family_of()
        .ok_or_else(|| Error::OutOfSpan("cannot split toward a custom basis".into()))?;
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    BasisSpec::family(family, like.orientation, q.degree()?, q.min_degree()?)
}

/// One category/functor law check.
#[derive(Debug, Clone)]
pub struct LawCheck {
    pub law: String,
    pub passed: bool,
    pub detail: String,
}

/// Report produced by [`Registry::verify_category`].
#[derive(Debug, Clone, Default)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, law: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(LawCheck {
            law: law.into(),
            passed,
            detail: detail.into(),
        });
    }
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Validate and register a basis: every element must lie in the spanned
    /// monomial window and the elements must be linearly independent.
    pub fn register(&mut self, spec: BasisSpec) -> Result<BasisId> {
        let elements = spec.elements()?;
        let degrees = spec.window_degrees();
        let dim = degrees.len();
        if elements.len() != dim {
            return Err(Error::InvalidBasis(format!(
                "{} elements for a {dim}-dimensional window",
                elements.len()
            )));
        }
        for (j, e) in elements.iter().enumerate() {
            if e.is_zero() {
                return Err(Error::InvalidBasis(format!("element {j} is zero")));
            }
            for (k, _) in e.iter() {
                if !degrees.contains(&k) {
                    return Err(Error::InvalidBasis(format!(
                        "element {j} has a term of degree {k} outside the window"
                    )));
                }
            }
            // the defining windows: unique degrees (descending) or unique
            // minimum degrees (ascending) for non-custom bases
            if !matches!(spec.kind, BasisKind::Custom { .. }) && !spec.alternating && !spec.superposed {
                match spec.orientation {
                    Orientation::Descending => {
                        if e.degree()? != spec.m + spec.step * j as i64 {
                            return Err(Error::InvalidBasis(format!(
                                "element {j} has degree {} instead of {}",
                                e.degree()?,
                                spec.m + spec.step * j as i64
                            )));
                        }
                    }
                    Orientation::Ascending => {
                        if e.min_degree()? != spec.m + spec.step * j as i64 {
                            return Err(Error::InvalidBasis(format!(
                                "element {j} has minimum degree {} instead of {}",
                                e.min_degree()?,
                                spec.m + spec.step * j as i64
                            )));
                        }
                    }
                }
            }
        }
        // exact rank check over the monomial expansion
        let mut grid: Vec<Vec<Rational>> = elements
            .iter()
            .map(|e| degrees.iter().map(|&d| e.coeff(d)).collect())
            .collect();
        let mut rank = 0usize;
        for col in 0..dim {
            if let Some(pivot) = (rank..dim).find(|&r| !grid[r][col].is_zero()) {
                grid.swap(rank, pivot);
                let lead = grid[rank][col].clone();
                for r in rank + 1..dim {
                    if !grid[r][col].is_zero() {
                        let factor = &grid[r][col] / &lead;
                        for c in col..dim {
                            let sub = &factor * &grid[rank][c];
                            grid[r][c] = &grid[r][c] - &sub;
                        }
                    }
                }
                rank += 1;
            }
        }
        if rank != dim {
            return Err(Error::InvalidBasis(format!(
                "elements are linearly dependent (rank {rank} of {dim})"
            )));
        }
        self.bases.push(RegisteredBasis { spec, elements });
        Ok(BasisId(self.bases.len() - 1))
    }

    pub fn spec(&self, id: BasisId) -> &BasisSpec {
        &self.bases[id.0].spec
    }

    pub fn elements(&self, id: BasisId) -> &[Polynomial] {
        &self.bases[id.0].elements
    }

    /// The change-of-basis matrix mapping `from`-coordinates to
    /// `to`-coordinates, routed through the monomial hub.
    pub fn cob(&self, from: BasisId, to: BasisId) -> Result<CobMatrix> {
        let fs = self.spec(from);
        let ts = self.spec(to);
        let f_step = if fs.alternating || fs.superposed { 1 } else { fs.step };
        let t_step = if ts.alternating || ts.superposed { 1 } else { ts.step };
        if fs.n != ts.n || fs.m != ts.m || f_step != t_step {
            return Err(Error::BasisMismatch(format!(
                "{fs} and {ts} span different windows"
            )));
        }
        matmul(&from_monomial_matrix(ts)?, &to_monomial_matrix(fs)?)
    }

    pub fn convert(&self, p: &Polynomial, to: BasisId, policy: ParityPolicy) -> Result<Conversion> {
        convert(p, self.spec(to), policy)
    }

    /// Check identity, inverse, associativity, groupoid closure, shape
    /// invariance and the truncation functor laws over the given bases.
    pub fn verify_category(&self, ids: &[BasisId]) -> Result<LawReport> {
        let mut report = LawReport::default();
        for &b in ids {
            let id = self.cob(b, b)?;
            report.push(
                "identity",
                id.is_identity(),
                format!("M[{0} -> {0}] = I", self.spec(b)),
            );
        }
        for &a in ids {
            for &b in ids {
                if a == b {
                    continue;
                }
                let ab = self.cob(a, b)?;
                let ba = self.cob(b, a)?;
                let prod = matmul(&ba, &ab);
                let ok = prod.map(|p| p.is_identity()).unwrap_or(false);
                report.push(
                    "inverse closure",
                    ok,
                    format!("M[{1} -> {0}] M[{0} -> {1}] = I", self.spec(a), self.spec(b)),
                );
                if ab.is_triangular() {
                    let inv = invert_triangular(&ab)?;
                    report.push(
                        "inverse matrix",
                        inv.to_grid() == ba.to_grid(),
                        format!("M[{0} -> {1}]^-1 = M[{1} -> {0}]", self.spec(a), self.spec(b)),
                    );
                }
            }
        }
        for &a in ids {
            for &b in ids {
                for &c in ids {
                    let direct = self.cob(a, c)?;
                    let via = matmul(&self.cob(b, c)?, &self.cob(a, b)?)?;
                    report.push(
                        "groupoid closure",
                        direct.to_grid() == via.to_grid(),
                        format!(
                            "M[{} -> {}] through {}",
                            self.spec(a),
                            self.spec(c),
                            self.spec(b)
                        ),
                    );
                }
            }
        }
        if ids.len() >= 2 {
            // associativity on sampled composable triples
            for window in ids.windows(2) {
                let (a, b) = (window[0], window[1]);
                let m1 = self.cob(a, b)?;
                let m2 = self.cob(b, a)?;
                let m3 = self.cob(a, b)?;
                let left = matmul(&matmul(&m1, &m2)?, &m3)?;
                let right = matmul(&m1, &matmul(&m2, &m3)?)?;
                report.push(
                    "associativity",
                    left.to_grid() == right.to_grid(),
                    format!("triple over {} and {}", self.spec(a), self.spec(b)),
                );
            }
        }
        for &a in ids {
            for &b in ids {
                let m = self.cob(a, b)?;
                let fs = self.spec(a);
                let ts = self.spec(b);
                if fs.orientation == ts.orientation && !fs.is_monomial() && !ts.is_monomial() {
                    let expect_upper = fs.orientation == Orientation::Descending;
                    let ok = if expect_upper { m.is_upper() } else { m.is_lower() };
                    report.push(
                        "triangularity",
                        ok,
                        format!("M[{fs} -> {ts}] orientation shape"),
                    );
                }
                if (fs.alternating || fs.is_monomial()) && (ts.alternating || ts.is_monomial()) {
                    report.push(
                        "alternation pattern",
                        m.has_alternating_pattern(),
                        format!("M[{fs} -> {ts}] keeps the alternating zero pattern"),
                    );
                }
            }
        }
        // truncation functor: T(MN) = T(M) T(N) and T(I) = I on triangular
        // morphisms
        for &a in ids {
            for &b in ids {
                for &c in ids {
                    let m = self.cob(b, c)?;
                    let n = self.cob(a, b)?;
                    if !m.is_triangular() || !n.is_triangular() {
                        continue;
                    }
                    let dim = m.dim();
                    for k1 in 0..dim {
                        for k2 in 0..dim - k1 {
                            if k1 + k2 == 0 || k1 + k2 >= dim {
                                continue;
                            }
                            let lhs = truncate_matrix(&matmul(&m, &n)?, k1, k2)?;
                            let rhs = matmul(
                                &truncate_matrix(&m, k1, k2)?,
                                &truncate_matrix(&n, k1, k2)?,
                            )?;
                            report.push(
                                "truncation functor",
                                lhs.to_grid() == rhs.to_grid(),
                                format!("tr[{k1},{k2}] over {} products", self.spec(b)),
                            );
                        }
                    }
                    let id = self.cob(a, a)?;
                    if dim > 1 {
                        let tid = truncate_matrix(&id, 1, 0)?;
                        report.push(
                            "truncation functor identity",
                            tid.is_identity(),
                            format!("tr[1,0] I over {}", self.spec(a)),
                        );
                    }
                }
            }
        }
        Ok(report)
    }
}
