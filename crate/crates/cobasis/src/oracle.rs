//! Brute-force ground truth: build any change-of-basis matrix by expanding
//! basis polynomials into exact monomial coordinates and solving the linear
//! system, then compare with formula-built matrices.

use num_traits::{One, Zero};

use crate::exact::Rational;
use crate::families::Family;
use crate::matrices::{matmul, scan_shape, CobMatrix, Orientation};
use crate::registry::{from_monomial_matrix, to_monomial_matrix, BasisSpec};
use crate::{Error, Result};

/// Outcome of an entrywise comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub matched: bool,
    pub first_mismatch: Option<(usize, usize, Rational, Rational)>,
}

impl OracleReport {
    fn matched() -> Self {
        Self {
            matched: true,
            first_mismatch: None,
        }
    }
}

/// Exact inverse by Gauss-Jordan elimination.
pub(crate) fn gauss_invert(grid: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = grid.len();
    let mut aug: Vec<Vec<Rational>> = grid
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        aug.swap(col, pivot);
        let lead = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = &*x / &lead;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &aug[col][c];
                    aug[r][c] = &aug[r][c] - &sub;
                }
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn effective_step(spec: &BasisSpec) -> i64 {
    if spec.alternating || spec.superposed {
        1
    } else {
        spec.step
    }
}

/// Expand the elements of a spec into window coordinates, columns of the
/// returned grid.
fn coordinate_columns(spec: &BasisSpec) -> Result<Vec<Vec<Rational>>> {
    let step = effective_step(spec);
    let degrees: Vec<i64> = (0..)
        .map(|j| spec.m + j * step)
        .take_while(|&d| d <= spec.n)
        .collect();
    let dim = degrees.len();
    let elements = spec.elements()?;
    if elements.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{} elements over a {dim}-degree window",
            elements.len()
        )));
    }
    let mut grid = vec![vec![Rational::zero(); dim]; dim];
    for (j, e) in elements.iter().enumerate() {
        for (k, c) in e.iter() {
            let i = degrees
                .iter()
                .position(|&d| d == k)
                .ok_or_else(|| Error::OutOfSpan(format!("degree {k} outside the window")))?;
            grid[i][j] = c.clone();
        }
    }
    Ok(grid)
}

/// Ground-truth change-of-basis matrix mapping `from`-coordinates to
/// `to`-coordinates: expand both element lists and solve exactly. No
/// coefficient function is consulted.
pub fn oracle_matrix(from: &BasisSpec, to: &BasisSpec) -> Result<CobMatrix> {
    if from.n != to.n || from.m != to.m || effective_step(from) != effective_step(to) {
        return Err(Error::BasisMismatch(format!(
            "{from} and {to} span different windows"
        )));
    }
    let b = coordinate_columns(from)?;
    let a_inv = gauss_invert(&coordinate_columns(to)?)?;
    let dim = b.len();
    let mut grid = vec![vec![Rational::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Rational::zero();
            for (l, row_b) in b.iter().enumerate() {
                if !a_inv[i][l].is_zero() {
                    acc += &a_inv[i][l] * &row_b[j];
                }
            }
            grid[i][j] = acc;
        }
    }
    let shape = scan_shape(&grid);
    CobMatrix::from_grid(grid, from.clone(), to.clone(), shape)
}

/// Entrywise exact comparison.
pub fn compare(formula: &CobMatrix, oracle: &CobMatrix) -> Result<OracleReport> {
    if formula.dim() != oracle.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            formula.dim(),
            oracle.dim()
        )));
    }
    for i in 0..formula.dim() {
        for j in 0..formula.dim() {
            if formula.at(i, j) != oracle.at(i, j) {
                return Ok(OracleReport {
                    matched: false,
                    first_mismatch: Some((i, j, oracle.at(i, j).clone(), formula.at(i, j).clone())),
                });
            }
        }
    }
    Ok(OracleReport::matched())
}

/// All basis specs with formula-backed matrices on windows up to `max_n`,
/// used by the equivalence sweep.
pub fn sweep_specs(max_n: i64) -> Vec<BasisSpec> {
    let mut specs = Vec::new();
    for n in 0..=max_n {
        for m in 0..=n {
            for orientation in [Orientation::Ascending, Orientation::Descending] {
                // step-1 native windows
                specs.extend(BasisSpec::family(Family::Bernstein, orientation, n, m));
                // step-2 native windows
                if (n - m) % 2 == 0 {
                    specs.extend(BasisSpec::family(Family::ZernikeRadial, orientation, n, m));
                }
                // alternating and superposed variants
                specs.extend(BasisSpec::alternating(Family::ZernikeRadial, orientation, n, m));
                specs.extend(BasisSpec::alternating(Family::ChebyshevU, orientation, n, m));
                specs.extend(BasisSpec::superposed(
                    Family::ZernikeRadial,
                    orientation,
                    n,
                    m,
                    false,
                ));
                specs.extend(BasisSpec::superposed(
                    Family::ChebyshevU,
                    orientation,
                    n,
                    m,
                    true,
                ));
            }
            // descending classical families, truncated where m sits above the
            // native minimum degree
            for family in [
                Family::Laguerre,
                Family::ChebyshevV,
                Family::ShiftedLegendre,
            ] {
                if m == 0 {
                    specs.extend(BasisSpec::family(family, Orientation::Descending, n, m));
                } else {
                    specs.extend(BasisSpec::truncated_family(
                        family,
                        Orientation::Descending,
                        n,
                        m,
                    ));
                }
            }
            if (n - m) % 2 == 0 {
                for family in [
                    Family::ChebyshevT,
                    Family::ChebyshevU,
                    Family::Legendre,
                    Family::HermitePhysicist,
                ] {
                    if m <= 1 {
                        specs.extend(BasisSpec::family(family, Orientation::Descending, n, m));
                    } else {
                        specs.extend(BasisSpec::truncated_family(
                            family,
                            Orientation::Descending,
                            n,
                            m,
                        ));
                    }
                }
            }
            // single-polynomial truncation bases (band inverses)
            for orientation in [Orientation::Ascending, Orientation::Descending] {
                specs.extend(BasisSpec::single_poly(
                    Family::Laguerre,
                    max_n,
                    orientation,
                    n,
                    m,
                ));
                if (n - m) % 2 == 0 && n % 2 == max_n % 2 {
                    specs.extend(BasisSpec::single_poly(
                        Family::ChebyshevT,
                        max_n,
                        orientation,
                        n,
                        m,
                    ));
                }
            }
        }
    }
    specs
}

/// One sweep entry: a description and its comparison report.
pub type SweepResult = (String, OracleReport);

/// Compare formula-built to- and from-monomial matrices against the oracle
/// for every spec in [`sweep_specs`].
pub fn formula_oracle_sweep(max_n: i64) -> Result<Vec<SweepResult>> {
    let mut out = Vec::new();
    for spec in sweep_specs(max_n) {
        let hub = BasisSpec::monomial(spec.n, spec.m, effective_step(&spec));
        let to = to_monomial_matrix(&spec)?;
        let to_oracle = oracle_matrix(&spec, &hub)?;
        out.push((format!("{spec} -> monomials"), compare(&to, &to_oracle)?));
        let from = from_monomial_matrix(&spec)?;
        let from_oracle = oracle_matrix(&hub, &spec)?;
        out.push((format!("monomials -> {spec}"), compare(&from, &from_oracle)?));
    }
    Ok(out)
}

/// Compare the eight composed matrix kinds against oracle products on all
/// shared windows up to `max_n`: representative family pairs per kind. Each
/// entry checks both formula routes (composed coefficient function and hub
/// matrix product) against the oracle.
pub fn composition_oracle_sweep(max_n: i64) -> Result<Vec<SweepResult>> {
    use crate::matrices::{build_matrix, build_mixed_matrix, compose_cf, MatrixKind, ParityKind};
    use crate::registry::{spec_from_monomial_cf, spec_to_monomial_cf};
    let mut out = Vec::new();
    for n in 0..=max_n {
        for m in 0..=n {
            let mut pairs: Vec<(BasisSpec, BasisSpec)> = Vec::new();
            for d_or in [Orientation::Ascending, Orientation::Descending] {
                for r_or in [Orientation::Ascending, Orientation::Descending] {
                    // step-1 pair: Bernstein both sides
                    pairs.push((
                        BasisSpec::family(Family::Bernstein, d_or, n, m)?,
                        BasisSpec::family(Family::Bernstein, r_or, n, m)?,
                    ));
                    if (n - m) % 2 == 0 {
                        // step-2 pair: Zernike domain, truncated-T or Zernike
                        // range
                        let z = BasisSpec::family(Family::ZernikeRadial, d_or, n, m)?;
                        let rng = if r_or == Orientation::Descending {
                            if m <= 1 {
                                BasisSpec::family(Family::ChebyshevT, Orientation::Descending, n, m)
                            } else {
                                BasisSpec::truncated_family(
                                    Family::ChebyshevT,
                                    Orientation::Descending,
                                    n,
                                    m,
                                )
                            }?
                        } else {
                            BasisSpec::family(Family::ZernikeRadial, Orientation::Ascending, n, m)?
                        };
                        pairs.push((z, rng));
                    }
                }
            }
            for (dom, rng) in pairs {
                let oracle = oracle_matrix(&dom, &rng)?;
                let product = matmul(&from_monomial_matrix(&rng)?, &to_monomial_matrix(&dom)?)?;
                out.push((
                    format!("{dom} -> {rng} (hub product)"),
                    compare(&product, &oracle)?,
                ));
                let d = dom.step;
                let kind = MatrixKind::new(
                    dom.orientation,
                    rng.orientation,
                    if d == 2 { ParityKind::Definite } else { ParityKind::NotDefinite },
                );
                let cf1 = spec_from_monomial_cf(&rng)?.ok_or(Error::SingularSystem)?;
                let cf2 = spec_to_monomial_cf(&dom)?.ok_or(Error::SingularSystem)?;
                let composed = compose_cf(kind, &cf1, &cf2, n, m)?;
                let built = if kind.is_mixed() {
                    build_mixed_matrix(kind, &composed, n, m, dom.clone(), rng.clone())?
                } else {
                    build_matrix(kind, &composed, n, m, dom.clone(), rng.clone())?
                };
                out.push((
                    format!("{dom} -> {rng} (composed coefficients)"),
                    compare(&built, &oracle)?,
                ));
            }
        }
    }
    Ok(out)
}
