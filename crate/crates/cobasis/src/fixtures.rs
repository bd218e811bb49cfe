//! Golden matrices with their construction recipes, shared by the
//! verification command and the acceptance suite. Expected entries are
//! stored as exact `p/q` strings.

use crate::exact::{parse_rational, rat, Polynomial, Rational};
use crate::families::{classical_poly, Family};
use crate::matrices::{invert_triangular, matmul, CobMatrix, Orientation};
use crate::oracle::compare;
use crate::registry::{from_monomial_matrix, to_monomial_matrix, BasisSpec, Registry};
use crate::transforms::{superpose_matrix, truncate_matrix};
use crate::Result;

type Builder = Box<dyn Fn() -> Result<CobMatrix>>;

pub struct Fixture {
    pub name: &'static str,
    pub expected: &'static [&'static [&'static str]],
    build: Builder,
}

impl Fixture {
    pub fn expected_grid(&self) -> Result<Vec<Vec<Rational>>> {
        self.expected
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect()
    }

    pub fn build(&self) -> Result<CobMatrix> {
        (self.build)()
    }

    /// Build and compare against the stored grid.
    pub fn check(&self) -> Result<crate::oracle::OracleReport> {
        let built = self.build()?;
        let expected = CobMatrix::from_grid(
            self.expected_grid()?,
            built.domain.clone(),
            built.range.clone(),
            built.shape,
        )?;
        compare(&built, &expected)
    }
}

fn fx(
    name: &'static str,
    expected: &'static [&'static [&'static str]],
    build: impl Fn() -> Result<CobMatrix> + 'static,
) -> Fixture {
    Fixture {
        name,
        expected,
        build: Box::new(build),
    }
}

fn cob(from: BasisSpec, to: BasisSpec) -> Result<CobMatrix> {
    let mut reg = Registry::new();
    let a = reg.register(from)?;
    let b = reg.register(to)?;
    reg.cob(a, b)
}

/// The descending basis of truncated Laguerre polynomials
/// `{L_3[2..2], L_4[2..3], L_5[2..4], L_6[2..5]}` used by the superposition
/// example: each element is the next-degree Laguerre polynomial truncated
/// one below its degree.
fn shifted_laguerre_basis() -> Result<BasisSpec> {
    let polys: Result<Vec<Polynomial>> = (0..4)
        .map(|j| classical_poly(Family::Laguerre, 3 + j)?.truncate(2 + j, 2))
        .collect();
    BasisSpec::custom(
        "shifted-laguerre",
        polys?,
        Orientation::Descending,
        5,
        2,
        1,
    )
}

/// Lagrange interpolation basis over the nodes `0..=n`.
fn lagrange_basis(n: i64) -> Result<BasisSpec> {
    let polys: Vec<Polynomial> = (0..=n)
        .map(|k| {
            let mut p = Polynomial::term(0, rat(1));
            let mut den = rat(1);
            for v in 0..=n {
                if v != k {
                    p = p.mul_linear(&rat(-v));
                    den *= rat(k - v);
                }
            }
            p.scale(&den.recip())
        })
        .collect();
    BasisSpec::custom("lagrange", polys, Orientation::Descending, n, 0, 1)
}

/// The basis `{1, -i, -i(-i+1), ...}` of signed falling factorials.
fn falling_factorial_basis(n: i64) -> Result<BasisSpec> {
    let polys: Vec<Polynomial> = (0..=n)
        .map(|k| {
            let mut p = Polynomial::term(0, rat(1));
            for w in 0..k {
                p = p.mul_linear(&rat(-w)).neg();
            }
            p
        })
        .collect();
    BasisSpec::custom("falling", polys, Orientation::Descending, n, 0, 1)
}

/// Every golden fixture, in paper order.
pub fn all_fixtures() -> Vec<Fixture> {
    vec![
        fx(
            "monomial -> truncated Laguerre 3x3",
            &[
                &["-1", "-4", "-18"],
                &["0", "2", "18"],
                &["0", "0", "-6"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::truncated_family(
                    Family::Laguerre,
                    Orientation::Descending,
                    3,
                    1,
                )?)
            },
        ),
        fx(
            "ascending Bernstein -> monomial 5x5",
            &[
                &["35", "0", "0", "0", "0"],
                &["-140", "35", "0", "0", "0"],
                &["210", "-105", "21", "0", "0"],
                &["-140", "105", "-42", "7", "0"],
                &["35", "-35", "21", "-7", "1"],
            ],
            || {
                to_monomial_matrix(&BasisSpec::family(
                    Family::Bernstein,
                    Orientation::Ascending,
                    7,
                    3,
                )?)
            },
        ),
        fx(
            "even Chebyshev T -> monomial 4x4",
            &[
                &["1", "-1", "1", "-1"],
                &["0", "2", "-8", "18"],
                &["0", "0", "8", "-48"],
                &["0", "0", "0", "32"],
            ],
            || {
                to_monomial_matrix(&BasisSpec::family(
                    Family::ChebyshevT,
                    Orientation::Descending,
                    6,
                    0,
                )?)
            },
        ),
        fx(
            "monomial -> ascending Zernike 4x4",
            &[
                &["-1/20", "0", "0", "0"],
                &["1/4", "1/21", "0", "0"],
                &["-7/10", "-1/3", "-1/8", "0"],
                &["3/2", "9/7", "9/8", "1"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::family(
                    Family::ZernikeRadial,
                    Orientation::Ascending,
                    9,
                    3,
                )?)
            },
        ),
        fx(
            "truncated L_10 band pair: forward 4x4",
            &[
                &["-20", "0", "0", "0"],
                &["35/4", "35/4", "0", "0"],
                &["-21/10", "-21/10", "-21/10", "0"],
                &["7/24", "7/24", "7/24", "7/24"],
            ],
            || {
                to_monomial_matrix(&BasisSpec::single_poly(
                    Family::Laguerre,
                    10,
                    Orientation::Ascending,
                    6,
                    3,
                )?)
            },
        ),
        fx(
            "truncated L_10 band pair: inverse 4x4",
            &[
                &["-1/20", "0", "0", "0"],
                &["1/20", "4/35", "0", "0"],
                &["0", "-4/35", "-10/21", "0"],
                &["0", "0", "10/21", "24/7"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::single_poly(
                    Family::Laguerre,
                    10,
                    Orientation::Ascending,
                    6,
                    3,
                )?)
            },
        ),
        fx(
            "cubic Bernstein -> monomial 4x4",
            &[
                &["1", "0", "0", "0"],
                &["-3", "3", "0", "0"],
                &["3", "-6", "3", "0"],
                &["-1", "3", "-3", "1"],
            ],
            || {
                to_monomial_matrix(&BasisSpec::family(
                    Family::Bernstein,
                    Orientation::Ascending,
                    3,
                    0,
                )?)
            },
        ),
        fx(
            "monomial -> descending Bernstein 4x4",
            &[
                &["1", "1", "1", "1"],
                &["0", "-1/4", "-1/2", "-3/4"],
                &["0", "0", "1/10", "3/10"],
                &["0", "0", "0", "-1/20"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::family(
                    Family::Bernstein,
                    Orientation::Descending,
                    6,
                    3,
                )?)
            },
        ),
        fx(
            "descending Zernike -> monomial 4x4",
            &[
                &["1", "-4", "10", "-20"],
                &["0", "5", "-30", "105"],
                &["0", "0", "21", "-168"],
                &["0", "0", "0", "84"],
            ],
            || {
                to_monomial_matrix(&BasisSpec::family(
                    Family::ZernikeRadial,
                    Orientation::Descending,
                    9,
                    3,
                )?)
            },
        ),
        fx(
            "monomial -> descending Zernike 4x4",
            &[
                &["1", "1/2", "1/3", "1/4"],
                &["0", "1/2", "1/2", "9/20"],
                &["0", "0", "1/6", "1/4"],
                &["0", "0", "0", "1/20"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::family(
                    Family::ZernikeRadial,
                    Orientation::Descending,
                    6,
                    0,
                )?)
            },
        ),
        fx(
            "truncated shifted Legendre -> descending Bernstein 4x4",
            &[
                &["70", "-378", "1302", "-3498"],
                &["0", "-252/5", "924/5", "-2904/5"],
                &["0", "0", "308/5", "-572/5"],
                &["0", "0", "0", "-3432/35"],
            ],
            || {
                cob(
                    BasisSpec::truncated_family(
                        Family::ShiftedLegendre,
                        Orientation::Descending,
                        7,
                        4,
                    )?,
                    BasisSpec::family(Family::Bernstein, Orientation::Descending, 7, 4)?,
                )
            },
        ),
        fx(
            "truncated V_6 -> ascending Bernstein 4x4",
            &[
                &["8/5", "0", "0", "0"],
                &["16/15", "-16/3", "0", "0"],
                &["-16", "-32", "-16/3", "0"],
                &["-16", "-48", "32", "64"],
            ],
            || {
                cob(
                    BasisSpec::single_poly(Family::ChebyshevV, 6, Orientation::Ascending, 6, 3)?,
                    BasisSpec::family(Family::Bernstein, Orientation::Ascending, 6, 3)?,
                )
            },
        ),
        fx(
            "monomial -> truncated Chebyshev T 4x4",
            &[
                &["1/4", "5/16", "21/64", "21/64"],
                &["0", "1/16", "7/64", "9/64"],
                &["0", "0", "1/64", "9/256"],
                &["0", "0", "0", "1/256"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::truncated_family(
                    Family::ChebyshevT,
                    Orientation::Descending,
                    9,
                    3,
                )?)
            },
        ),
        fx(
            "descending Zernike -> truncated Chebyshev T 4x4",
            &[
                &["1/4", "9/16", "1/64", "1/4"],
                &["0", "5/16", "27/64", "0"],
                &["0", "0", "21/64", "21/64"],
                &["0", "0", "0", "21/64"],
            ],
            || {
                cob(
                    BasisSpec::family(Family::ZernikeRadial, Orientation::Descending, 9, 3)?,
                    BasisSpec::truncated_family(Family::ChebyshevT, Orientation::Descending, 9, 3)?,
                )
            },
        ),
        fx(
            "ascending Zernike -> truncated Hermite 4x4",
            &[
                &["1/4032", "0", "0", "0"],
                &["31/16128", "1/2304", "0", "0"],
                &["37/2304", "13/2304", "1/1152", "0"],
                &["7/48", "37/576", "77/4608", "1/512"],
            ],
            || {
                cob(
                    BasisSpec::family(Family::ZernikeRadial, Orientation::Ascending, 9, 3)?,
                    BasisSpec::single_poly(
                        Family::HermitePhysicist,
                        9,
                        Orientation::Ascending,
                        9,
                        3,
                    )?,
                )
            },
        ),
        fx(
            "truncated T_7 -> odd Chebyshev T mixed 4x4",
            &[
                &["0", "7", "-35", "35"],
                &["0", "0", "-14", "21"],
                &["0", "0", "0", "7"],
                &["1", "1", "1", "1"],
            ],
            || {
                cob(
                    BasisSpec::single_poly(Family::ChebyshevT, 7, Orientation::Ascending, 7, 1)?,
                    BasisSpec::family(Family::ChebyshevT, Orientation::Descending, 7, 1)?,
                )
            },
        ),
        fx(
            "monomial -> ascending Bernstein 6x6",
            &[
                &["1", "0", "0", "0", "0", "0"],
                &["1", "1/5", "0", "0", "0", "0"],
                &["1", "2/5", "1/10", "0", "0", "0"],
                &["1", "3/5", "3/10", "1/10", "0", "0"],
                &["1", "4/5", "3/5", "2/5", "1/5", "0"],
                &["1", "1", "1", "1", "1", "1"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::family(
                    Family::Bernstein,
                    Orientation::Ascending,
                    5,
                    0,
                )?)
            },
        ),
        fx(
            "shifted Legendre -> monomial 6x6",
            &[
                &["1", "-1", "1", "-1", "1", "-1"],
                &["0", "2", "-6", "12", "-20", "30"],
                &["0", "0", "6", "-30", "90", "-210"],
                &["0", "0", "0", "20", "-140", "560"],
                &["0", "0", "0", "0", "70", "-630"],
                &["0", "0", "0", "0", "0", "252"],
            ],
            || {
                to_monomial_matrix(&BasisSpec::family(
                    Family::ShiftedLegendre,
                    Orientation::Descending,
                    5,
                    0,
                )?)
            },
        ),
        fx(
            "shifted Legendre -> ascending Bernstein 6x6",
            &[
                &["1", "-1", "1", "-1", "1", "-1"],
                &["1", "-3/5", "-1/5", "7/5", "-3", "5"],
                &["1", "-1/5", "-4/5", "4/5", "2", "-10"],
                &["1", "1/5", "-4/5", "-4/5", "2", "10"],
                &["1", "3/5", "-1/5", "-7/5", "-3", "-5"],
                &["1", "1", "1", "1", "1", "1"],
            ],
            || {
                cob(
                    BasisSpec::family(Family::ShiftedLegendre, Orientation::Descending, 5, 0)?,
                    BasisSpec::family(Family::Bernstein, Orientation::Ascending, 5, 0)?,
                )
            },
        ),
        fx(
            "Lagrange basis -> monomial 6x6",
            &[
                &["1", "0", "0", "0", "0", "0"],
                &["-137/60", "5", "-5", "10/3", "-5/4", "1/5"],
                &["15/8", "-77/12", "107/12", "-13/2", "61/24", "-5/12"],
                &["-17/24", "71/24", "-59/12", "49/12", "-41/24", "7/24"],
                &["1/8", "-7/12", "13/12", "-1", "11/24", "-1/12"],
                &["-1/120", "1/24", "-1/12", "1/12", "-1/24", "1/120"],
            ],
            || to_monomial_matrix(&lagrange_basis(5)?),
        ),
        fx(
            "falling factorial basis -> monomial 6x6",
            &[
                &["1", "0", "0", "0", "0", "0"],
                &["0", "-1", "-1", "-2", "-6", "-24"],
                &["0", "0", "1", "3", "11", "50"],
                &["0", "0", "0", "-1", "-6", "-35"],
                &["0", "0", "0", "0", "1", "10"],
                &["0", "0", "0", "0", "0", "-1"],
            ],
            || to_monomial_matrix(&falling_factorial_basis(5)?),
        ),
        fx(
            "monomial -> falling factorial basis 6x6",
            &[
                &["1", "0", "0", "0", "0", "0"],
                &["0", "-1", "-1", "-1", "-1", "-1"],
                &["0", "0", "1", "3", "7", "15"],
                &["0", "0", "0", "-1", "-6", "-25"],
                &["0", "0", "0", "0", "1", "10"],
                &["0", "0", "0", "0", "0", "-1"],
            ],
            || from_monomial_matrix(&falling_factorial_basis(5)?),
        ),
        fx(
            "Lagrange basis -> falling factorial basis 6x6",
            &[
                &["1", "0", "0", "0", "0", "0"],
                &["1", "-1", "0", "0", "0", "0"],
                &["1/2", "-1", "1/2", "0", "0", "0"],
                &["1/6", "-1/2", "1/2", "-1/6", "0", "0"],
                &["1/24", "-1/6", "1/4", "-1/6", "1/24", "0"],
                &["1/120", "-1/24", "1/12", "-1/12", "1/24", "-1/120"],
            ],
            || cob(lagrange_basis(5)?, falling_factorial_basis(5)?),
        ),
        fx(
            "Laguerre -> monomial 6x6",
            &[
                &["1", "1", "1", "1", "1", "1"],
                &["0", "-1", "-2", "-3", "-4", "-5"],
                &["0", "0", "1/2", "3/2", "3", "5"],
                &["0", "0", "0", "-1/6", "-2/3", "-5/3"],
                &["0", "0", "0", "0", "1/24", "5/24"],
                &["0", "0", "0", "0", "0", "-1/120"],
            ],
            || {
                to_monomial_matrix(&BasisSpec::family(
                    Family::Laguerre,
                    Orientation::Descending,
                    5,
                    0,
                )?)
            },
        ),
        fx(
            "monomial -> Laguerre 6x6",
            &[
                &["1", "1", "2", "6", "24", "120"],
                &["0", "-1", "-4", "-18", "-96", "-600"],
                &["0", "0", "2", "18", "144", "1200"],
                &["0", "0", "0", "-6", "-96", "-1200"],
                &["0", "0", "0", "0", "24", "600"],
                &["0", "0", "0", "0", "0", "-120"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::family(
                    Family::Laguerre,
                    Orientation::Descending,
                    5,
                    0,
                )?)
            },
        ),
        fx(
            "tr[2,1] of monomial -> Laguerre 3x3",
            &[
                &["2", "18", "144"],
                &["0", "-6", "-96"],
                &["0", "0", "24"],
            ],
            || {
                let m = from_monomial_matrix(&BasisSpec::family(
                    Family::Laguerre,
                    Orientation::Descending,
                    5,
                    0,
                )?)?;
                truncate_matrix(&m, 2, 1)
            },
        ),
        fx(
            "tr[2,1] of Laguerre -> monomial 3x3",
            &[
                &["1/2", "3/2", "3"],
                &["0", "-1/6", "-2/3"],
                &["0", "0", "1/24"],
            ],
            || {
                let m = to_monomial_matrix(&BasisSpec::family(
                    Family::Laguerre,
                    Orientation::Descending,
                    5,
                    0,
                )?)?;
                truncate_matrix(&m, 2, 1)
            },
        ),
        fx(
            "tr[1,1] of monomial -> Laguerre 4x4",
            &[
                &["-1", "-4", "-18", "-96"],
                &["0", "2", "18", "144"],
                &["0", "0", "-6", "-96"],
                &["0", "0", "0", "24"],
            ],
            || {
                let m = from_monomial_matrix(&BasisSpec::family(
                    Family::Laguerre,
                    Orientation::Descending,
                    5,
                    0,
                )?)?;
                truncate_matrix(&m, 1, 1)
            },
        ),
        fx(
            "descending Bernstein -> truncated Laguerre 3x3",
            &[
                &["2", "-48", "660"],
                &["0", "18", "-504"],
                &["0", "0", "144"],
            ],
            || {
                cob(
                    BasisSpec::family(Family::Bernstein, Orientation::Descending, 4, 2)?,
                    BasisSpec::truncated_family(Family::Laguerre, Orientation::Descending, 4, 2)?,
                )
            },
        ),
        fx(
            "descending alternating Zernike -> monomial 7x7",
            &[
                &["1", "0", "-3", "0", "6", "0", "-10"],
                &["0", "1", "0", "-4", "0", "10", "0"],
                &["0", "0", "4", "0", "-20", "0", "60"],
                &["0", "0", "0", "5", "0", "-30", "0"],
                &["0", "0", "0", "0", "15", "0", "-105"],
                &["0", "0", "0", "0", "0", "21", "0"],
                &["0", "0", "0", "0", "0", "0", "56"],
            ],
            || {
                to_monomial_matrix(&BasisSpec::alternating(
                    Family::ZernikeRadial,
                    Orientation::Descending,
                    8,
                    2,
                )?)
            },
        ),
        fx(
            "monomial -> descending alternating Zernike 7x7",
            &[
                &["1", "0", "3/4", "0", "3/5", "0", "1/2"],
                &["0", "1", "0", "4/5", "0", "2/3", "0"],
                &["0", "0", "1/4", "0", "1/3", "0", "5/14"],
                &["0", "0", "0", "1/5", "0", "2/7", "0"],
                &["0", "0", "0", "0", "1/15", "0", "1/8"],
                &["0", "0", "0", "0", "0", "1/21", "0"],
                &["0", "0", "0", "0", "0", "0", "1/56"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::alternating(
                    Family::ZernikeRadial,
                    Orientation::Descending,
                    8,
                    2,
                )?)
            },
        ),
        fx(
            "monomial -> ascending alternating Zernike 7x7",
            &[
                &["-1/20", "0", "0", "0", "0", "0", "0"],
                &["0", "1/15", "0", "0", "0", "0", "0"],
                &["1/4", "0", "1/21", "0", "0", "0", "0"],
                &["0", "-2/5", "0", "-1/7", "0", "0", "0"],
                &["-7/10", "0", "-1/3", "0", "-1/8", "0", "0"],
                &["0", "4/3", "0", "8/7", "0", "1", "0"],
                &["3/2", "0", "9/7", "0", "9/8", "0", "1"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::alternating(
                    Family::ZernikeRadial,
                    Orientation::Ascending,
                    9,
                    3,
                )?)
            },
        ),
        fx(
            "ascending alternating Zernike -> Chebyshev T 6x6",
            &[
                &["1/4", "0", "0", "0", "3/8", "0"],
                &["0", "1/4", "0", "1/8", "0", "5/8"],
                &["0", "0", "1/2", "0", "1/2", "0"],
                &["0", "1/8", "0", "9/16", "0", "5/16"],
                &["3/4", "0", "1/2", "0", "1/8", "0"],
                &["0", "5/8", "0", "5/16", "0", "1/16"],
            ],
            || {
                cob(
                    BasisSpec::alternating(Family::ZernikeRadial, Orientation::Ascending, 5, 0)?,
                    BasisSpec::alternating(Family::ChebyshevT, Orientation::Descending, 5, 0)?,
                )
            },
        ),
        fx(
            "monomial -> ascending superposed Zernike 4x4",
            &[
                &["-1/3", "0", "0", "0"],
                &["1/3", "-1/4", "0", "0"],
                &["1", "1/4", "1", "0"],
                &["-1", "1", "-1", "1"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::superposed(
                    Family::ZernikeRadial,
                    Orientation::Ascending,
                    5,
                    2,
                    false,
                )?)
            },
        ),
        fx(
            "truncated Laguerre family -> monomial 4x4",
            &[
                &["3/2", "3", "5", "15/2"],
                &["0", "-2/3", "-5/3", "-10/3"],
                &["0", "0", "5/24", "5/8"],
                &["0", "0", "0", "-1/20"],
            ],
            || to_monomial_matrix(&shifted_laguerre_basis()?),
        ),
        fx(
            "truncated Laguerre family -> superposed Zernike 4x4",
            &[
                &["-1/2", "-1", "-5/3", "-5/2"],
                &["1/2", "7/6", "25/12", "10/3"],
                &["3/2", "17/6", "115/24", "175/24"],
                &["-3/2", "-11/3", "-55/8", "-1381/120"],
            ],
            || {
                cob(
                    shifted_laguerre_basis()?,
                    BasisSpec::superposed(
                        Family::ZernikeRadial,
                        Orientation::Ascending,
                        5,
                        2,
                        false,
                    )?,
                )
            },
        ),
        fx(
            "monomial -> ascending superposed Zernike 5x5",
            &[
                &["1/10", "0", "0", "0", "0"],
                &["-1/10", "-1/5", "0", "0", "0"],
                &["-2/5", "1/5", "-1/6", "0", "0"],
                &["2/5", "1", "1/6", "1", "0"],
                &["1", "-1", "1", "-1", "1"],
            ],
            || {
                from_monomial_matrix(&BasisSpec::superposed(
                    Family::ZernikeRadial,
                    Orientation::Ascending,
                    7,
                    3,
                    false,
                )?)
            },
        ),
        fx(
            "ascending Bernstein -> superposed Zernike 5x5",
            &[
                &["7/2", "0", "0", "0", "0"],
                &["49/2", "-7", "0", "0", "0"],
                &["-77", "49/2", "-7/2", "0", "0"],
                &["-231", "245/2", "-77/2", "7", "0"],
                &["560", "-280", "84", "-14", "1"],
            ],
            || {
                cob(
                    BasisSpec::family(Family::Bernstein, Orientation::Ascending, 7, 3)?,
                    BasisSpec::superposed(
                        Family::ZernikeRadial,
                        Orientation::Ascending,
                        7,
                        3,
                        false,
                    )?,
                )
            },
        ),
    ]
}

/// The superposition non-functor counterexample: two alternating
/// lower-triangular morphisms whose superposition does not commute with the
/// product. Returns `(S(M N), S(M) S(N))`, which must differ.
pub fn superposition_counterexample() -> Result<(CobMatrix, CobMatrix)> {
    let spec = BasisSpec::monomial(2, 0, 1);
    let mk = |rows: [[i64; 3]; 3]| -> Result<CobMatrix> {
        CobMatrix::from_grid(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
            spec.clone(),
            spec.clone(),
            crate::matrices::Shape::AltLower,
        )
    };
    let m = mk([[1, 0, 0], [0, 2, 0], [4, 0, 3]])?;
    let n = mk([[2, 0, 0], [0, 2, 0], [5, 0, 2]])?;
    let s_mn = superpose_matrix(&matmul(&m, &n)?, false)?;
    let s_m_s_n = matmul(&superpose_matrix(&m, false)?, &superpose_matrix(&n, false)?)?;
    Ok((s_mn, s_m_s_n))
}

/// The monomial-to-superposed matrix obtained by column-summing the
/// alternating to-monomial matrix and inverting; must agree with the direct
/// route. Kept as a helper for the acceptance suite.
pub fn superposed_matrix_via_columns(n: i64, m: i64) -> Result<CobMatrix> {
    let alt = BasisSpec::alternating(Family::ZernikeRadial, Orientation::Ascending, n, m)?;
    let m_alt = to_monomial_matrix(&alt)?;
    invert_triangular(&superpose_matrix(&m_alt, false)?)
}
