//! The shifted-Legendre-to-Bernstein matrix family: terminating
//! hypergeometric elements, row and column recurrences, Lagrange-form
//! columns, the penultimate-column closed form, and the shifted
//! Chebyshev-U-to-Bernstein coefficients.

use num_traits::{One, Zero};

use crate::exact::{bin, binomial, frac, pochhammer, pow2, rat, sign, Polynomial, Rational};
use crate::{Error, Result};

/// No general closed form in `(n, j, k)` is implemented for these matrix
/// elements; `lb_element` evaluates a terminating hypergeometric sum.
/// Closed forms exist only for specific rows and columns, see
/// `lb_column_closed_form` and `lb_row_closed_form`.
pub const NO_GENERAL_CLOSED_FORM: &str =
    "matrix elements are evaluated as terminating hypergeometric sums; \
     no general closed form in (n, j, k) is available";

fn check_index(n: i64, v: i64, what: &str) -> Result<()> {
    if v < 0 || v > n {
        return Err(Error::IndexOutOfDomain {
            what: what.into(),
            k: v,
            max: n,
        });
    }
    Ok(())
}

/// Element `(j, k)` (row, column) of the degree-`n` shifted-Legendre to
/// Bernstein matrix, as the terminating 3F2 sum.
pub fn lb_element(n: i64, j: i64, k: i64) -> Result<Rational> {
    check_index(n, j, "lb row")?;
    check_index(n, k, "lb column")?;
    let mut total = Rational::zero();
    for v in 0..=j.min(k) {
        let num = pochhammer(&rat(-k), v)?
            * pochhammer(&rat(1 + k), v)?
            * pochhammer(&rat(-j), v)?;
        let den = pochhammer(&rat(1), v)? * pochhammer(&rat(-n), v)? * crate::exact::factorial(v);
        total += num / den;
    }
    Ok(sign(k) * total)
}

/// The same element through the independent three-binomial sum.
pub fn lb_element_binomial_sum(n: i64, j: i64, k: i64) -> Result<Rational> {
    check_index(n, j, "lb row")?;
    check_index(n, k, "lb column")?;
    let mut total = Rational::zero();
    for i in (0.max(j + k - n))..=j.min(k) {
        total += sign(k + i) * bin(j, i) * bin(k, i) * bin(n - j, k - i);
    }
    Ok(total / bin(n, k))
}

/// The full degree-`n` matrix from `lb_element`.
pub fn lb_matrix(n: i64) -> Result<Vec<Vec<Rational>>> {
    (0..=n)
        .map(|j| (0..=n).map(|k| lb_element(n, j, k)).collect())
        .collect()
}

/// Given columns `j` and `j+1`, produce column `j+2` from the column
/// recurrence. Requires `j <= n-2`.
pub fn lb_column_step(
    n: i64,
    j: i64,
    col_j: &[Rational],
    col_j1: &[Rational],
) -> Result<Vec<Rational>> {
    if j > n - 2 {
        return Err(Error::IndexOutOfDomain {
            what: "column recurrence index".into(),
            k: j,
            max: n - 2,
        });
    }
    let lead = rat((2 + j) * (1 + j - n));
    assert!(!lead.is_zero(), "leading coefficient vanishes");
    Ok((0..=n)
        .map(|i| {
            let a = rat((1 + j) * (2 + j + n)) * &col_j[i as usize];
            let b = rat((3 + 2 * j) * (2 * i - n)) * &col_j1[i as usize];
            (a - b) / &lead
        })
        .collect())
}

/// Given rows `i` and `i+1`, produce row `i+2` from the row recurrence.
/// Requires `i <= n-2`.
pub fn lb_row_step(
    n: i64,
    i: i64,
    row_i: &[Rational],
    row_i1: &[Rational],
) -> Result<Vec<Rational>> {
    if i > n - 2 {
        return Err(Error::IndexOutOfDomain {
            what: "row recurrence index".into(),
            k: i,
            max: n - 2,
        });
    }
    let lead = rat((2 + i) * (1 + i - n));
    assert!(!lead.is_zero(), "leading coefficient vanishes");
    Ok((0..=n)
        .map(|j| {
            let a = rat(-(1 + i) * (i - n)) * &row_i[j as usize];
            let b = rat(2 + 4 * i + 2 * i * i + j + j * j - 3 * n - 2 * i * n)
                * &row_i1[j as usize];
            (a + b) / &lead
        })
        .collect())
}

/// Column `j` of the degree-`n` matrix as a polynomial in the row index:
/// the Lagrange interpolation of the column values over `0..=n`.
pub fn lb_lagrange_column(n: i64, j: i64) -> Result<Polynomial> {
    check_index(n, j, "lb column")?;
    let mut acc = Polynomial::zero();
    for v in 0..=n {
        let value = lb_element(n, v, j)?;
        if value.is_zero() {
            continue;
        }
        // l_v(i) = prod_{w != v} (i - w) / (v - w)
        let mut numerator = Polynomial::term(0, rat(1));
        let mut denominator = Rational::one();
        for w in 0..=n {
            if w == v {
                continue;
            }
            numerator = numerator.mul_linear(&rat(-w));
            denominator *= rat(v - w);
        }
        acc = acc.add(&numerator.scale(&(value / denominator)));
    }
    Ok(acc)
}

/// Closed form of the penultimate column: `(-1)^(n+i) ((2i-n)/n) C(n, i)`.
pub fn lb_penultimate(n: i64, i: i64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::IndexOutOfDomain {
            what: "penultimate column degree".into(),
            k: n,
            max: i64::MAX,
        });
    }
    check_index(n, i, "lb row")?;
    Ok(sign(n + i) * frac(2 * i - n, n) * bin(n, i))
}

/// Both sides of the Legendre difference identity
/// `P_n(x) - P_{n-1}(x) = 2^(1-n)/n sum_v v C(n,v)^2 (x+1)^(n-v) (x-1)^v`,
/// evaluated exactly at `x`.
pub fn lb_legendre_difference_identity(n: i64, x: &Rational) -> Result<(Rational, Rational)> {
    use crate::families::{classical_poly, Family};
    if n < 1 {
        return Err(Error::IndexOutOfDomain {
            what: "difference identity degree".into(),
            k: n,
            max: i64::MAX,
        });
    }
    let lhs = classical_poly(Family::Legendre, n)?.eval(x)
        - classical_poly(Family::Legendre, n - 1)?.eval(x);
    let xp1 = x + rat(1);
    let xm1 = x - rat(1);
    let mut total = Rational::zero();
    for v in 0..=n {
        let b = bin(n, v);
        let mut term = rat(v) * &b * &b;
        for _ in 0..(n - v) {
            term *= &xp1;
        }
        for _ in 0..v {
            term *= &xm1;
        }
        total += term;
    }
    let rhs = pow2(1 - n) / rat(n) * total;
    Ok((lhs, rhs))
}

/// Known closed forms for low and high column indices; `None` when no
/// closed form is listed for `j`.
pub fn lb_column_closed_form(n: i64, j: i64, i: i64) -> Option<Rational> {
    let nn = rat(n);
    match j {
        0 => Some(rat(1)),
        1 if n >= 1 => Some(frac(2 * i, n) - rat(1)),
        2 if n >= 2 => Some(
            (&nn * &nn - rat(6 * i + 1) * &nn + rat(6 * i * i)) / (rat(n) * rat(n - 1)),
        ),
        // leading factor (2i - n), matching the antisymmetry of odd columns
        3 if n >= 3 => Some(
            rat(2 * i - n) * (&nn * &nn - rat(10 * i + 3) * &nn + rat(10 * i * i + 2))
                / rat(n * (n - 1) * (n - 2)),
        ),
        4 if n >= 4 => {
            let n2 = &nn * &nn;
            let n3 = &n2 * &nn;
            let n4 = &n3 * &nn;
            let num = n4 - rat(20 * i + 6) * &n3 + rat(90 * i * i + 30 * i + 11) * &n2
                - rat(140 * i * i * i + 30 * i * i + 50 * i + 6) * &nn
                + rat(70 * i * i * i * i + 50 * i * i);
            Some(num / rat(n * (n - 1) * (n - 2) * (n - 3)))
        }
        _ if j == n => Some(sign(n + i) * bin(n, i)),
        _ if j == n - 1 && n >= 1 => Some(sign(n + i) * bin(n, i) * frac(2 * i - n, n)),
        _ if j == n - 2 && n >= 2 => {
            let n2 = n * n;
            let num = rat(n2 * n - (4 * i + 1) * n2 + 2 * i * (2 * i + 1) * n - 2 * i * i);
            Some(sign(n + i) * bin(n, i) * num / rat(n2 * (n - 1)))
        }
        _ if j == n - 3 && n >= 3 => {
            let n2 = n * n;
            let num = rat(n2 * n - (4 * i + 3) * n2 + (2 * i + 1) * (2 * i + 2) * n - 6 * i * i);
            Some(sign(n + i - 1) * bin(n, i) * num * rat(n - 2 * i) / rat(n2 * (n - 1) * (n - 2)))
        }
        _ => None,
    }
}

/// Known closed forms for the top rows, indexed by `r = n - k` (row `i = r`);
/// `None` when no closed form is listed.
pub fn lb_row_closed_form(n: i64, r: i64, j: i64) -> Option<Rational> {
    let jj = rat(j);
    let t1 = &jj * rat(j + 1); // j(j+1)
    match r {
        0 => Some(sign(j)),
        1 if n >= 1 => Some(sign(j) * (rat(1) - &t1 / rat(n))),
        2 if n >= 2 => {
            let t2 = rat((1 - j) * j) * rat((1 + j) * (2 + j));
            Some(sign(j) * (rat(1) - rat(2) * &t1 / rat(n) + &t2 / rat(2 * (1 - n) * n)))
        }
        3 if n >= 3 => {
            let t2 = rat((1 - j) * j) * rat((1 + j) * (2 + j));
            let t3 = rat((1 - j) * (2 - j)) * rat(j * (1 + j)) * rat((2 + j) * (3 + j));
            Some(
                sign(j)
                    * (rat(1) - rat(3) * &t1 / rat(n) + rat(3) * &t2 / rat(2 * (1 - n) * n)
                        - &t3 / rat(6 * (1 - n) * (2 - n) * n)),
            )
        }
        _ => None,
    }
}

/// Coefficient of `x^(n-k)` in the shifted Chebyshev-U polynomial
/// `U_n(2x - 1)`, as a binomial sum.
pub fn u_star_to_monomial(n: i64, k: i64) -> Result<Rational> {
    check_index(n, k, "U* coefficient")?;
    let mut total = Rational::zero();
    for v in 0..=k / 2 {
        total += bin(n - 2 * v, k - 2 * v) * bin(n - v, v) * sign(k - v) * pow2(2 * (n - v) - k);
    }
    Ok(total)
}

/// Coefficient of the Bernstein polynomial `b_{n-k}^n` in `U_n(2x - 1)`,
/// closed form with half-integer binomials.
pub fn u_star_bernstein_coeff(n: i64, k: i64) -> Result<Rational> {
    check_index(n, k, "shifted-U Bernstein coefficient")?;
    let half = frac(2 * n + 1, 2); // n + 1/2
    Ok(sign(k) * rat(n + 1) * binomial(&half, n - k) * binomial(&half, k)
        / (bin(n, k) * binomial(&half, n)))
}

/// The same mapping through the composed change-of-basis route; at `j = n`
/// it equals [`u_star_bernstein_coeff`].
pub fn u_star_bernstein_composed(n: i64, j: i64, k: i64) -> Result<Rational> {
    check_index(n, j, "shifted-U row")?;
    check_index(n, k, "shifted-U column")?;
    let mut total = Rational::zero();
    for v in 0..=(n - k).min(j) {
        total += bin(n - v, k) / bin(n, k) * u_star_to_monomial(j, j - v)?;
    }
    Ok(total)
}
