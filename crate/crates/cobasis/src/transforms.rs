//! Truncation of matrices, alternating bases and matrices, superposition,
//! and their interaction laws.

use num_traits::Zero;

use crate::exact::Rational;
use crate::families::{CoeffFn, Direction};
use crate::matrices::{matmul, CobMatrix, MatrixKind, Orientation, ParityKind, Shape};
use crate::registry::BasisSpec;
use crate::{Error, Result};

/// Exclude the first `k1` and last `k2` rows and columns of a triangular
/// matrix. Both bases are truncated the same way, so the result is again a
/// change-of-basis matrix.
pub fn truncate_matrix(m: &CobMatrix, k1: usize, k2: usize) -> Result<CobMatrix> {
    if !m.is_triangular() {
        return Err(Error::ShapeUnsupported(m.shape));
    }
    let dim = m.dim();
    if k1 + k2 == 0 || k1 + k2 >= dim {
        return Err(Error::WindowExhausted { k1, k2, dim });
    }
    let new_dim = dim - k1 - k2;
    let grid = (0..new_dim)
        .map(|i| {
            (0..new_dim)
                .map(|j| m.at(i + k1, j + k1).clone())
                .collect()
        })
        .collect();
    CobMatrix::from_grid(
        grid,
        m.domain.truncated_view(k1, k2)?,
        m.range.truncated_view(k1, k2)?,
        m.shape,
    )
}

/// Number of distinct truncations of a `b x b` triangular matrix.
pub fn count_truncations(b: i64) -> i64 {
    assert!(b >= 2);
    b * (b + 1) / 2 - 1
}

/// Build an alternating change-of-basis matrix from a definite-parity
/// coefficient function on the step-1 window `[m, n]`.
///
/// Descending: entry `(i, j)` is `cf(m+j, m + (j mod 2), (j-i)/2)` when
/// `j >= i` and `j - i` is even. Ascending: entry `(i, j)` is
/// `cf(n - ((n-m-j) mod 2), m+j, floor((n-m-i)/2))` when `i >= j` and
/// `i - j` is even. All other entries are zero.
pub fn build_alternating_matrix(
    orientation: Orientation,
    cf: &CoeffFn,
    n: i64,
    m: i64,
    domain: BasisSpec,
    range: BasisSpec,
) -> Result<CobMatrix> {
    if cf.step != 2 {
        return Err(Error::ParityMismatch(format!(
            "alternating layouts need a definite-parity coefficient function, {} has step {}",
            cf.label(),
            cf.step
        )));
    }
    if n < m || m < 0 {
        return Err(Error::InvalidWindow { n, m, d: 1 });
    }
    let dim = (n - m + 1) as usize;
    let mut grid = vec![vec![Rational::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let (ii, jj) = (i as i64, j as i64);
            if (ii - jj) % 2 != 0 {
                continue;
            }
            match orientation {
                Orientation::Descending if j >= i => {
                    grid[i][j] = cf.at(m + jj, m + jj.rem_euclid(2), (jj - ii) / 2)?;
                }
                Orientation::Ascending if i >= j => {
                    let top = n - (n - m - jj).rem_euclid(2);
                    grid[i][j] = cf.at(top, m + jj, (n - m - ii) / 2)?;
                }
                _ => {}
            }
        }
    }
    let shape = match orientation {
        Orientation::Descending => Shape::AltUpper,
        Orientation::Ascending => Shape::AltLower,
    };
    CobMatrix::from_grid(grid, domain, range, shape)
}

/// Invert an alternating matrix by rebuilding the same layout with the
/// inverse-direction coefficient function, then checking the product.
pub fn invert_alternating(m: &CobMatrix, cf_inverse: &CoeffFn) -> Result<CobMatrix> {
    let orientation = match m.shape {
        Shape::AltUpper => Orientation::Descending,
        Shape::AltLower => Orientation::Ascending,
        _ => return Err(Error::ShapeUnsupported(m.shape)),
    };
    let (n, mm) = (m.domain.n, m.domain.m);
    let inv = build_alternating_matrix(
        orientation,
        cf_inverse,
        n,
        mm,
        m.range.clone(),
        m.domain.clone(),
    )?;
    let product = matmul(m, &inv)?;
    if !product.is_identity() {
        let bad = (0..product.dim())
            .flat_map(|i| (0..product.dim()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let e = product.at(i, j);
                if i == j {
                    !num_traits::One::is_one(e)
                } else {
                    !e.is_zero()
                }
            })
            .unwrap_or((0, 0));
        return Err(Error::InverseMismatch(bad.0, bad.1));
    }
    Ok(inv)
}

/// Flags for [`compose_alternating`]: which operand matrices alternate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AltFlags {
    pub vr_alt: bool,
    pub rt_alt: bool,
}

/// Optimized composition of coefficient functions when one or both matrices
/// alternate, skipping the structurally zero summands. Directly supported
/// for ascending windows without definite parity; other kinds fall back to
/// the materialized matrix product.
pub fn compose_alternating(
    kind: MatrixKind,
    cf1: &CoeffFn,
    cf2: &CoeffFn,
    flags: AltFlags,
    n: i64,
    m: i64,
) -> Result<CoeffFn> {
    if !flags.vr_alt && !flags.rt_alt {
        return Err(Error::Unsupported(
            "no alternating operand; use the plain composition".into(),
        ));
    }
    if kind
        == MatrixKind::new(
            Orientation::Ascending,
            Orientation::Ascending,
            ParityKind::NotDefinite,
        )
    {
        let (c1, c2) = (cf1.clone(), cf2.clone());
        let label = format!("alt ({}) o ({})", cf1.label(), cf2.label());
        let cf = match (flags.vr_alt, flags.rt_alt) {
            (true, false) => CoeffFn::new(None, Direction::Composed, 1, label, move |nn, mm, k| {
                // range matrix alternates: its coefficient function has step
                // 2 and a parity-resolved first argument
                let mut acc = Rational::zero();
                let top = nn - mm - k;
                for w in 0..=top {
                    if (top - w) % 2 != 0 {
                        continue;
                    }
                    acc += c1.at(nn - k.rem_euclid(2), mm + w, k / 2)?
                        * c2.at(nn, mm, nn - mm - w)?;
                }
                Ok(acc)
            }),
            (true, true) => CoeffFn::new(None, Direction::Composed, 1, label, move |nn, mm, k| {
                if (nn - mm - k) % 2 != 0 {
                    return Ok(Rational::zero());
                }
                let mut acc = Rational::zero();
                let top = nn - mm - k;
                for w in (0..=top).step_by(2) {
                    acc += c1.at(nn - k.rem_euclid(2), mm + w, k / 2)?
                        * c2.at(nn - (nn - mm).rem_euclid(2), mm, (nn - mm - w) / 2)?;
                }
                Ok(acc)
            }),
            (false, true) => CoeffFn::new(None, Direction::Composed, 1, label, move |nn, mm, k| {
                let mut acc = Rational::zero();
                let top = nn - mm - k;
                for w in (0..=top).step_by(2) {
                    acc += c1.at(nn, mm + w, k)?
                        * c2.at(nn - (nn - mm).rem_euclid(2), mm, (nn - mm - w) / 2)?;
                }
                Ok(acc)
            }),
            (false, false) => unreachable!(),
        };
        return Ok(cf);
    }
    // fallback: materialize both matrices over the hub and wrap the product
    if kind.is_mixed() || kind.parity == ParityKind::Definite {
        return Err(Error::Unsupported(
            "alternating composition falls back only for square step-1 kinds".into(),
        ));
    }
    let hub = BasisSpec::monomial(n, m, 1);
    let left = if flags.vr_alt {
        build_alternating_matrix(kind.range, cf1, n, m, hub.clone(), hub.clone())?
    } else {
        crate::matrices::build_matrix(
            MatrixKind::new(kind.range, kind.range, ParityKind::NotDefinite),
            cf1,
            n,
            m,
            hub.clone(),
            hub.clone(),
        )?
    };
    let right = if flags.rt_alt {
        build_alternating_matrix(kind.domain, cf2, n, m, hub.clone(), hub.clone())?
    } else {
        crate::matrices::build_matrix(
            MatrixKind::new(kind.domain, kind.domain, ParityKind::NotDefinite),
            cf2,
            n,
            m,
            hub.clone(),
            hub,
        )?
    };
    let product = matmul(&left, &right)?;
    let label = format!("materialized ({}) o ({})", cf1.label(), cf2.label());
    let orientation = kind.domain;
    let (wn, wm) = (n, m);
    Ok(CoeffFn::window_bound(
        Direction::Composed,
        1,
        label,
        n,
        m,
        move |a, b, k| {
            let (i, j) = match orientation {
                Orientation::Descending => ((a - wm - k) as usize, (a - wm) as usize),
                Orientation::Ascending => ((wn - wm - k) as usize, (b - wm) as usize),
            };
            Ok(product.at(i, j).clone())
        },
    ))
}

/// Turn an alternating matrix into the matrix of the superposed basis:
/// each column absorbs its alternating neighbour. With `negate_h` the
/// lower-degree component enters negated (Chebyshev third-kind style).
pub fn superpose_matrix(m_alt: &CobMatrix, negate_h: bool) -> Result<CobMatrix> {
    let (lower, dim) = match m_alt.shape {
        Shape::AltUpper => (false, m_alt.dim()),
        Shape::AltLower => (true, m_alt.dim()),
        _ => return Err(Error::ShapeUnsupported(m_alt.shape)),
    };
    let s = if negate_h {
        -Rational::from_integer(1.into())
    } else {
        Rational::from_integer(1.into())
    };
    let old = m_alt.to_grid();
    let mut grid = vec![vec![Rational::zero(); dim]; dim];
    for j in 0..dim {
        for i in 0..dim {
            grid[i][j] = if lower {
                // ascending: d_last = c_last, d_j = c_j + s c_{j+1}
                if j == dim - 1 {
                    old[i][j].clone()
                } else {
                    &old[i][j] + &(&s * &old[i][j + 1])
                }
            } else {
                // descending: d_0 = c_0, d_j = c_j + s c_{j-1}
                if j == 0 {
                    old[i][j].clone()
                } else {
                    &old[i][j] + &(&s * &old[i][j - 1])
                }
            };
        }
    }
    let domain = superposed_domain(&m_alt.domain, negate_h);
    CobMatrix::from_grid(
        grid,
        domain,
        m_alt.range.clone(),
        if lower { Shape::LowerTri } else { Shape::UpperTri },
    )
}

/// Converse of [`superpose_matrix`]: recover the alternating matrix by the
/// inverse column recurrence.
pub fn alternate_from_superposed(m_sup: &CobMatrix, negate_h: bool) -> Result<CobMatrix> {
    let (lower, dim) = match m_sup.shape {
        Shape::LowerTri | Shape::AltLower | Shape::Band
            if m_sup.is_lower() =>
        {
            (true, m_sup.dim())
        }
        Shape::UpperTri | Shape::AltUpper | Shape::Band => (false, m_sup.dim()),
        _ => return Err(Error::ShapeUnsupported(m_sup.shape)),
    };
    let s = if negate_h {
        -Rational::from_integer(1.into())
    } else {
        Rational::from_integer(1.into())
    };
    let old = m_sup.to_grid();
    let mut grid = vec![vec![Rational::zero(); dim]; dim];
    if lower {
        // ascending: c_last = d_last, c_j = d_j - s c_{j+1}
        for j in (0..dim).rev() {
            for i in 0..dim {
                grid[i][j] = if j == dim - 1 {
                    old[i][j].clone()
                } else {
                    &old[i][j] - &(&s * &grid[i][j + 1])
                };
            }
        }
    } else {
        // descending: c_0 = d_0, c_j = d_j - s c_{j-1}
        for j in 0..dim {
            for i in 0..dim {
                grid[i][j] = if j == 0 {
                    old[i][j].clone()
                } else {
                    &old[i][j] - &(&s * &grid[i][j - 1])
                };
            }
        }
    }
    let domain = alternating_domain(&m_sup.domain);
    CobMatrix::from_grid(
        grid,
        domain,
        m_sup.range.clone(),
        if lower { Shape::AltLower } else { Shape::AltUpper },
    )
}

fn superposed_domain(domain: &BasisSpec, negate_h: bool) -> BasisSpec {
    if domain.alternating {
        let mut d = domain.clone();
        d.alternating = false;
        d.superposed = true;
        d.h_negated = negate_h;
        d
    } else {
        domain.clone()
    }
}

fn alternating_domain(domain: &BasisSpec) -> BasisSpec {
    if domain.superposed {
        let mut d = domain.clone();
        d.superposed = false;
        d.h_negated = false;
        d.alternating = true;
        d
    } else {
        domain.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};
    use crate::families::{
        cf_classical_from_monomial, cf_monomial_to_bernstein_asc,
        cf_monomial_to_zernike_asc, cf_monomial_to_zernike_desc, cf_poly_truncation_to_monomial,
        cf_zernike_to_monomial, classical_poly, Family,
    };
    use crate::matrices::{build_matrix, invert_triangular};
    use crate::registry::{from_monomial_matrix, to_monomial_matrix};
    use proptest::prelude::*;

    #[test]
    fn count_truncations_examples() {
        assert_eq!(count_truncations(6), 20);
        assert_eq!(count_truncations(2), 2);
        // b = 3: enumerate all (k1, k2) with 0 < k1 + k2 < 3
        let mut found = 0;
        for k1 in 0..3usize {
            for k2 in 0..3usize {
                if k1 + k2 > 0 && k1 + k2 < 3 {
                    found += 1;
                }
            }
        }
        assert_eq!(found, count_truncations(3));
        assert_eq!(count_truncations(3), 5);
    }

    #[test]
    fn truncate_window_bounds() {
        let m = to_monomial_matrix(
            &BasisSpec::family(Family::Laguerre, Orientation::Descending, 5, 0).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            truncate_matrix(&m, 0, 0),
            Err(Error::WindowExhausted { .. })
        ));
        assert!(matches!(
            truncate_matrix(&m, 3, 3),
            Err(Error::WindowExhausted { .. })
        ));
        // tr_{dim-1, 0} leaves the last diagonal entry
        let t = truncate_matrix(&m, 5, 0).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(*t.at(0, 0), frac(-1, 120));
    }

    #[test]
    fn truncation_commutes_with_product_and_inverse() {
        // tr(MN) = tr(M) tr(N) and tr(M^-1) = (tr M)^-1 on triangular
        // matrices, all valid (k1, k2), dims <= 12
        let spec_a = BasisSpec::family(Family::Bernstein, Orientation::Descending, 11, 0).unwrap();
        let spec_b =
            BasisSpec::truncated_family(Family::Laguerre, Orientation::Descending, 11, 0).unwrap();
        let m = matmul(
            &from_monomial_matrix(&spec_b).unwrap(),
            &to_monomial_matrix(&spec_a).unwrap(),
        )
        .unwrap();
        let n = invert_triangular(&m).unwrap();
        let dim = m.dim();
        for k1 in 0..dim {
            for k2 in 0..dim - k1 {
                if k1 + k2 == 0 || k1 + k2 >= dim {
                    continue;
                }
                let lhs = truncate_matrix(&matmul(&m, &n).unwrap(), k1, k2).unwrap();
                let rhs = matmul(
                    &truncate_matrix(&m, k1, k2).unwrap(),
                    &truncate_matrix(&n, k1, k2).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs.to_grid(), rhs.to_grid(), "product at ({k1}, {k2})");
                let inv_then_trunc = truncate_matrix(&n, k1, k2).unwrap();
                let trunc_then_inv =
                    invert_triangular(&truncate_matrix(&m, k1, k2).unwrap()).unwrap();
                assert_eq!(
                    inv_then_trunc.to_grid(),
                    trunc_then_inv.to_grid(),
                    "inverse at ({k1}, {k2})"
                );
            }
        }
    }

    #[test]
    fn alternating_descending_zernike_diagonal_reciprocal() {
        let spec =
            BasisSpec::alternating(Family::ZernikeRadial, Orientation::Descending, 8, 2).unwrap();
        let fwd = to_monomial_matrix(&spec).unwrap();
        let inv = from_monomial_matrix(&spec).unwrap();
        for j in 0..fwd.dim() {
            assert_eq!(inv.at(j, j), &fwd.at(j, j).recip());
        }
    }

    #[test]
    fn invert_alternating_matches_triangular_inverse() {
        // descending n=8, m=2
        let spec =
            BasisSpec::alternating(Family::ZernikeRadial, Orientation::Descending, 8, 2).unwrap();
        let fwd = to_monomial_matrix(&spec).unwrap();
        let via_cf = invert_alternating(&fwd, &cf_monomial_to_zernike_desc()).unwrap();
        let via_tri = invert_triangular(&fwd).unwrap();
        assert_eq!(via_cf.to_grid(), via_tri.to_grid());
        // ascending n=9, m=3
        let spec =
            BasisSpec::alternating(Family::ZernikeRadial, Orientation::Ascending, 9, 3).unwrap();
        let fwd = from_monomial_matrix(&spec).unwrap();
        let via_cf = invert_alternating(&fwd, &cf_zernike_to_monomial()).unwrap();
        let via_tri = invert_triangular(&fwd).unwrap();
        assert_eq!(via_cf.to_grid(), via_tri.to_grid());
    }

    #[test]
    fn invert_alternating_rejects_wrong_inverse() {
        let spec =
            BasisSpec::alternating(Family::ZernikeRadial, Orientation::Descending, 8, 2).unwrap();
        let fwd = to_monomial_matrix(&spec).unwrap();
        // the ascending-direction function is not the inverse of this layout
        let wrong = invert_alternating(&fwd, &cf_monomial_to_zernike_asc());
        assert!(matches!(wrong, Err(Error::InverseMismatch(_, _))));
    }

    #[test]
    fn alternation_pattern_preserved_by_product_and_inverse() {
        let z = BasisSpec::alternating(Family::ZernikeRadial, Orientation::Descending, 9, 2)
            .unwrap();
        let t = BasisSpec::alternating(Family::ChebyshevT, Orientation::Descending, 9, 2).unwrap();
        let a = to_monomial_matrix(&z).unwrap();
        let b = from_monomial_matrix(&t).unwrap();
        let prod = matmul(&b, &a).unwrap();
        assert!(prod.has_alternating_pattern());
        assert_eq!(prod.shape, Shape::AltUpper);
        let inv = invert_triangular(&prod).unwrap();
        assert!(inv.has_alternating_pattern());
    }

    #[test]
    fn compose_alternating_matches_materialized_products() {
        // all three ascending flag combinations against plain matrix products
        let kind = MatrixKind::new(
            Orientation::Ascending,
            Orientation::Ascending,
            ParityKind::NotDefinite,
        );
        for n in 0..=10i64 {
            for m in 0..=n {
                let hub = BasisSpec::monomial(n, m, 1);
                let z_from = cf_monomial_to_zernike_asc();
                let z_to = cf_zernike_to_monomial();
                let b_from = cf_monomial_to_bernstein_asc();
                let v6 = classical_poly(Family::ChebyshevV, n.max(1)).unwrap();
                let v_to = cf_poly_truncation_to_monomial(v6, 1, "truncated V -> monomial");
                // alpha3: alternating range (Zernike), plain domain (V truncations)
                let m_vr =
                    build_alternating_matrix(Orientation::Ascending, &z_from, n, m, hub.clone(), hub.clone())
                        .unwrap();
                let m_rt = build_matrix(
                    MatrixKind::new(Orientation::Ascending, Orientation::Ascending, ParityKind::NotDefinite),
                    &v_to,
                    n,
                    m,
                    hub.clone(),
                    hub.clone(),
                )
                .unwrap();
                let expected = matmul(&m_vr, &m_rt).unwrap();
                let a3 = compose_alternating(
                    kind,
                    &z_from,
                    &v_to,
                    AltFlags { vr_alt: true, rt_alt: false },
                    n,
                    m,
                )
                .unwrap();
                let built = build_matrix(kind, &a3, n, m, hub.clone(), hub.clone()).unwrap();
                assert_eq!(built.to_grid(), expected.to_grid(), "alpha3 [{m}, {n}]");
                // alpha4: both alternating
                let m_rt_alt = build_alternating_matrix(
                    Orientation::Ascending,
                    &z_to,
                    n,
                    m,
                    hub.clone(),
                    hub.clone(),
                )
                .unwrap();
                let expected = matmul(&m_vr, &m_rt_alt).unwrap();
                let a4 = compose_alternating(
                    kind,
                    &z_from,
                    &z_to,
                    AltFlags { vr_alt: true, rt_alt: true },
                    n,
                    m,
                )
                .unwrap();
                let built = build_matrix(kind, &a4, n, m, hub.clone(), hub.clone()).unwrap();
                assert_eq!(built.to_grid(), expected.to_grid(), "alpha4 [{m}, {n}]");
                // alpha4 zero pattern on unequal-parity windows
                if (n - m) % 2 == 1 {
                    for k in (0..=(n - m)).filter(|k| (n - m - k) % 2 == 1) {
                        assert!(a4.at(n, m, k).unwrap().is_zero());
                    }
                }
                // alpha5: plain range (Bernstein), alternating domain (Zernike)
                let m_vr_plain = build_matrix(
                    MatrixKind::new(Orientation::Ascending, Orientation::Ascending, ParityKind::NotDefinite),
                    &b_from,
                    n,
                    m,
                    hub.clone(),
                    hub.clone(),
                )
                .unwrap();
                let expected = matmul(&m_vr_plain, &m_rt_alt).unwrap();
                let a5 = compose_alternating(
                    kind,
                    &b_from,
                    &z_to,
                    AltFlags { vr_alt: false, rt_alt: true },
                    n,
                    m,
                )
                .unwrap();
                let built = build_matrix(kind, &a5, n, m, hub.clone(), hub.clone()).unwrap();
                assert_eq!(built.to_grid(), expected.to_grid(), "alpha5 [{m}, {n}]");
            }
        }
    }

    #[test]
    fn compose_alternating_single_element_window() {
        let kind = MatrixKind::new(
            Orientation::Ascending,
            Orientation::Ascending,
            ParityKind::NotDefinite,
        );
        let z_from = cf_monomial_to_zernike_asc();
        let z_to = cf_zernike_to_monomial();
        let a4 = compose_alternating(
            kind,
            &z_from,
            &z_to,
            AltFlags { vr_alt: true, rt_alt: true },
            4,
            4,
        )
        .unwrap();
        let direct = z_from.at(4, 4, 0).unwrap() * z_to.at(4, 4, 0).unwrap();
        assert_eq!(a4.at(4, 4, 0).unwrap(), direct);
    }

    #[test]
    fn compose_alternating_descending_fallback() {
        let kind = MatrixKind::new(
            Orientation::Descending,
            Orientation::Descending,
            ParityKind::NotDefinite,
        );
        let z_to = cf_zernike_to_monomial();
        let t_from = cf_classical_from_monomial(Family::ChebyshevT);
        let (n, m) = (7, 1);
        let hub = BasisSpec::monomial(n, m, 1);
        let composed = compose_alternating(
            kind,
            &t_from,
            &z_to,
            AltFlags { vr_alt: true, rt_alt: true },
            n,
            m,
        )
        .unwrap();
        let built = build_matrix(kind, &composed, n, m, hub.clone(), hub.clone()).unwrap();
        let left = build_alternating_matrix(Orientation::Descending, &t_from, n, m, hub.clone(), hub.clone())
            .unwrap();
        let right =
            build_alternating_matrix(Orientation::Descending, &z_to, n, m, hub.clone(), hub).unwrap();
        assert_eq!(built.to_grid(), matmul(&left, &right).unwrap().to_grid());
    }

    #[test]
    fn superpose_chebyshev_v_from_u() {
        // descending alternating U with the lower component negated gives the
        // third-kind polynomials column by column
        for n in 1..=9i64 {
            let spec =
                BasisSpec::alternating(Family::ChebyshevU, Orientation::Descending, n, 0).unwrap();
            let alt = to_monomial_matrix(&spec).unwrap();
            let sup = superpose_matrix(&alt, true).unwrap();
            for j in 0..=n {
                let v = classical_poly(Family::ChebyshevV, j).unwrap();
                for i in 0..=n {
                    assert_eq!(
                        *sup.at(i as usize, j as usize),
                        v.coeff(i),
                        "V_{j} coefficient of x^{i}"
                    );
                }
            }
        }
    }

    #[test]
    fn superpose_round_trips() {
        // ascending 4x4 (n=5, m=2) and descending 7x7 (n=8, m=2)
        for (orientation, n, m) in [
            (Orientation::Ascending, 5, 2),
            (Orientation::Descending, 8, 2),
            (Orientation::Ascending, 9, 3),
        ] {
            let spec =
                BasisSpec::alternating(Family::ZernikeRadial, orientation, n, m).unwrap();
            let alt = to_monomial_matrix(&spec).unwrap();
            let sup = superpose_matrix(&alt, false).unwrap();
            let back = alternate_from_superposed(&sup, false).unwrap();
            assert_eq!(back.to_grid(), alt.to_grid());
            assert_eq!(back.shape, alt.shape);
        }
    }

    #[test]
    fn superpose_one_by_one_unchanged() {
        let spec =
            BasisSpec::alternating(Family::ZernikeRadial, Orientation::Ascending, 4, 4).unwrap();
        let alt = to_monomial_matrix(&spec).unwrap();
        let sup = superpose_matrix(&alt, false).unwrap();
        assert_eq!(sup.to_grid(), alt.to_grid());
    }

    #[test]
    fn superpose_requires_alternating_shape() {
        let spec = BasisSpec::family(Family::Bernstein, Orientation::Ascending, 5, 2).unwrap();
        let m = to_monomial_matrix(&spec).unwrap();
        assert!(matches!(
            superpose_matrix(&m, false),
            Err(Error::ShapeUnsupported(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn superpose_alternate_round_trip(diag in proptest::collection::vec(1i64..9, 5), fill in proptest::collection::vec(-9i64..9, 25), lower in proptest::bool::ANY, neg in proptest::bool::ANY) {
            let dim = diag.len();
            let spec = BasisSpec::monomial(dim as i64 - 1, 0, 1);
            let mut grid = vec![vec![Rational::zero(); dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    let tri_ok = if lower { i >= j } else { j >= i };
                    if tri_ok && (i.abs_diff(j)) % 2 == 0 {
                        grid[i][j] = if i == j { rat(diag[i]) } else { rat(fill[i * dim + j]) };
                    }
                }
            }
            let shape = if lower { Shape::AltLower } else { Shape::AltUpper };
            let m = CobMatrix::from_grid(grid, spec.clone(), spec, shape).unwrap();
            let round = alternate_from_superposed(&superpose_matrix(&m, neg).unwrap(), neg).unwrap();
            prop_assert_eq!(round.to_grid(), m.to_grid());
        }
    }
}
