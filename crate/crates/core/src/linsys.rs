//! The linear system satisfied by the last-letter generating functions of the
//! gk-connector statistic, over the ring `Z[b]` with `b = x(q - 1)`.
//!
//! Writing `G_i` for the generating function of words ending in letter `i` and
//! `a = x * G`, appending a letter gives `G_i - b * sum_{j >= k-i+1} G_j = a`.
//! In matrix form `A (G_1..G_k)^T = (a..a)^T` with
//! `A[i][j] = [i == j] - b [i + j >= k + 1]` (1-based). Cramer's rule gives
//! `G_l = a * N_l / det A`, where `N_l` is the determinant of `A` with column
//! `l` replaced by ones.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::algebra::{substitute_b, BPolynomial, BivariatePolynomial, QPolynomial, RationalGF};
use crate::error::{Error, Result};
use crate::genfunc::gkcon_gf;

/// Square matrix over `Z[b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<BPolynomial>>,
}

impl PolyMatrix {
    /// Panics unless `rows` is non-empty and square.
    pub fn new(rows: Vec<Vec<BPolynomial>>) -> Self {
        let dim = rows.len();
        assert!(dim >= 1, "matrix must be at least 1x1");
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        PolyMatrix { rows }
    }

    /// Builds from integer pairs `(constant, b-coefficient)`.
    pub fn from_linear(rows: &[&[(i64, i64)]]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&(c0, c1)| BPolynomial::from_i64s(&[c0, c1])).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// 0-based access.
    pub fn entry(&self, row: usize, col: usize) -> &BPolynomial {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<BPolynomial>] {
        &self.rows
    }

    /// Copy with 0-based column `col` replaced by `value` in every row.
    pub fn with_column(&self, col: usize, value: &BPolynomial) -> PolyMatrix {
        let mut rows = self.rows.clone();
        for r in &mut rows {
            r[col] = value.clone();
        }
        PolyMatrix { rows }
    }

    pub fn eval_b(&self, b: &BigInt) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.iter().map(|e| e.eval(b)).collect()).collect()
    }

    /// Entries rendered in ascending powers of `b`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `A[i][j] = [i == j] - b [i + j >= k + 1]`, indices 1-based.
pub fn build_system_matrix(k: u32) -> PolyMatrix {
    assert!(k >= 1, "alphabet size must be positive");
    let k = k as usize;
    let rows = (1..=k)
        .map(|i| {
            (1..=k)
                .map(|j| {
                    let diag = i64::from(i == j);
                    let off = if i + j > k { -1 } else { 0 };
                    BPolynomial::from_i64s(&[diag, off])
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(rows)
}

/// Determinant by fraction-free (Bareiss) elimination. Every interior
/// division is exact in `Z[b]`; a failing division means the input broke an
/// internal invariant and is reported as [`Error::InexactDivision`].
pub fn poly_det(m: &PolyMatrix) -> Result<BPolynomial> {
    let n = m.dim();
    let mut a = m.rows.clone();
    let mut negate = false;
    let mut prev = BPolynomial::one();
    for p in 0..n {
        if a[p][p].is_zero() {
            match (p + 1..n).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    negate = !negate;
                }
                None => return Ok(BPolynomial::zero()),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let cross = &(&a[p][p] * &a[i][j]) - &(&a[i][p] * &a[p][j]);
                a[i][j] = cross.div_exact(&prev).ok_or(Error::InexactDivision)?;
            }
            a[i][p] = BPolynomial::zero();
        }
        prev = a[p][p].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant by Laplace expansion along the first row. Exponential; kept as
/// an independent check on [`poly_det`] for small matrices.
pub fn det_cofactor(m: &PolyMatrix) -> BPolynomial {
    fn expand(rows: &[Vec<BPolynomial>], cols: &[usize]) -> BPolynomial {
        if cols.len() == 1 {
            return rows[0][cols[0]].clone();
        }
        let mut acc = BPolynomial::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let e = &rows[0][c];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = expand(&rows[1..], &rest);
            let term = e * &minor;
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let cols: Vec<usize> = (0..m.dim()).collect();
    expand(&m.rows, &cols)
}

fn sign(exp: usize) -> BigInt {
    if exp % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn binom(n: usize, r: usize) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(r))
}

/// `sum_{i=0..k} (-1)^floor((i+1)/2) C(floor((k-i)/2) + i, i) b^i`
pub fn det_closed_form(k: u32) -> BPolynomial {
    assert!(k >= 1, "alphabet size must be positive");
    let k = k as usize;
    BPolynomial::from_coeffs((0..=k).map(|i| sign((i + 1) / 2) * binom((k - i) / 2 + i, i)).collect())
}

/// Term `t_j` of the denominator sum, `0 <= j <= k - 1`. The sign pattern
/// depends on the parity of `k`:
///
/// - even `k`: `1 + (-1)^floor(j/2) sum_{i=1..j} (-1)^floor((j-i)/2) C(floor((j-i)/2) + i, i) b^i`
/// - odd `k`: `1 + (-1)^floor((j+1)/2) sum_{i=1..j} (-1)^floor((j-i+1)/2) C(floor((j-i)/2) + i, i) b^i`
pub fn term_polynomial(k: u32, j: usize) -> BPolynomial {
    let even = k % 2 == 0;
    let outer = if even { sign(j / 2) } else { sign((j + 1) / 2) };
    let mut coeffs = vec![BigInt::from(1)];
    for i in 1..=j {
        let inner = if even { sign((j - i) / 2) } else { sign((j - i + 1) / 2) };
        coeffs.push(&outer * inner * binom((j - i) / 2 + i, i));
    }
    BPolynomial::from_coeffs(coeffs)
}

/// `[t_0, ..., t_{k-1}]`
pub fn terms(k: u32) -> Vec<BPolynomial> {
    assert!(k >= 1, "alphabet size must be positive");
    (0..k as usize).map(|j| term_polynomial(k, j)).collect()
}

/// `sum_{j=0..k-1} t_j`, the polynomial multiplying `x` in the closed-form
/// denominator.
pub fn term_sum(k: u32) -> BPolynomial {
    terms(k).iter().sum()
}

/// `N_l = det A_l / a` for `l = 1..k`: since `A_l` has the all-`a` column,
/// multilinearity pulls out `a` and leaves `A` with column `l` set to ones.
pub fn cramer_numerators(k: u32) -> Vec<BPolynomial> {
    let a = build_system_matrix(k);
    let ones = BPolynomial::one();
    (0..a.dim())
        .map(|col| poly_det(&a.with_column(col, &ones)).expect("exact in Z[b]"))
        .collect()
}

/// For each `l` (0-based), the index `j` with `N_l == t_j`, matching each term
/// at most once. `None` if the two lists are not equal as multisets.
pub fn term_permutation(k: u32) -> Option<Vec<usize>> {
    let numerators = cramer_numerators(k);
    let terms = terms(k);
    let mut used = vec![false; terms.len()];
    numerators
        .iter()
        .map(|n| {
            let j = (0..terms.len()).find(|&j| !used[j] && terms[j] == *n)?;
            used[j] = true;
            Some(j)
        })
        .collect()
}

/// Columns `l` (1-based) where `N_l` differs from the running sum
/// `t_0 + ... + t_{l-1}`.
pub fn partial_sum_mismatches(k: u32) -> Vec<usize> {
    let numerators = cramer_numerators(k);
    let terms = terms(k);
    let mut running = BPolynomial::zero();
    let mut out = Vec::new();
    for (l, n) in numerators.iter().enumerate() {
        running = &running + &terms[l];
        if *n != running {
            out.push(l + 1);
        }
    }
    out
}

/// Last-letter generating functions `G_l = x * G * N_l / det A`, `l = 1..k`,
/// with `G = gkcon_gf(k)`.
pub fn solve_conditional_gfs(k: u32) -> Vec<RationalGF> {
    let whole = gkcon_gf(k);
    let det = substitute_b(&poly_det(&build_system_matrix(k)).expect("exact in Z[b]"));
    cramer_numerators(k)
        .iter()
        .map(|n| {
            let ratio = RationalGF::new(substitute_b(n).shift_x(1), det.clone()).expect("det A is 1 at b = 0");
            &whole * &ratio
        })
        .collect()
}

/// Left side of the implicit gk-connector relation,
/// `(1 - kx) G - x(q - 1) sum_{i=1..k} sum_{j=k-i+1..k} G_j`, which must be 1.
///
/// The double sum counts `G_j` once for every `i >= k - j + 1`, i.e. `j` times.
pub fn implicit_relation_lhs(k: u32, conditional: &[RationalGF]) -> RationalGF {
    let whole = gkcon_gf(k);
    let one_minus_kx = RationalGF::polynomial(&BivariatePolynomial::one() - &BivariatePolynomial::x_monomial(QPolynomial::constant(k), 1));
    let b = RationalGF::polynomial(BivariatePolynomial::x_monomial(QPolynomial::from_i64s(&[-1, 1]), 1));
    let mut weighted = RationalGF::zero();
    for (j, g) in (1..).zip(conditional) {
        let scaled = RationalGF::polynomial(BivariatePolynomial::constant(QPolynomial::constant(j)));
        weighted = &weighted + &(&scaled * g);
    }
    &(&one_minus_kx * &whole) - &(&b * &weighted)
}

/// A determinant value as originally published for a small `k`, kept verbatim.
/// `column` is `None` for `det A` and `Some(l)` (1-based) for `det A_l`, whose
/// text carries the factor `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatedDeterminant {
    pub k: u32,
    pub column: Option<usize>,
    pub text: &'static str,
}

pub const STATED_DETERMINANTS: &[StatedDeterminant] = &[
    StatedDeterminant { k: 2, column: None, text: "-b^2-b+1" },
    StatedDeterminant { k: 4, column: None, text: "b^4+b^3-3b^2-2b+1" },
    StatedDeterminant { k: 6, column: None, text: "-b^6 - b^5 + 5b^4 + 4b^3 - 6b^2 - 3b + 1" },
    StatedDeterminant { k: 1, column: None, text: "1" },
    StatedDeterminant { k: 3, column: None, text: "b^3-b^2-2b+1" },
    StatedDeterminant { k: 5, column: None, text: "-b^5+b^4+4b^3-3b^2-3b+1" },
    StatedDeterminant { k: 2, column: Some(1), text: "a" },
    StatedDeterminant { k: 2, column: Some(2), text: "a(-b+1)" },
    StatedDeterminant { k: 4, column: Some(1), text: "a(-b^2-b+1)" },
    StatedDeterminant { k: 4, column: Some(2), text: "a" },
    StatedDeterminant { k: 4, column: Some(3), text: "a(b+1)" },
    StatedDeterminant { k: 4, column: Some(4), text: "a(-b^3-b^2+2b+1)" },
    StatedDeterminant { k: 6, column: Some(1), text: "a(b^4+b^3-3b^2-2b+1)" },
    StatedDeterminant { k: 6, column: Some(2), text: "a(-b^2-b+1)" },
    StatedDeterminant { k: 6, column: Some(3), text: "a" },
    StatedDeterminant { k: 6, column: Some(4), text: "a(b+1)" },
    StatedDeterminant { k: 6, column: Some(5), text: "a(-b^3-b^2+2b+1)" },
    StatedDeterminant { k: 6, column: Some(6), text: "a(b^5+b^4-4b^3-3b^2+3b+1)" },
    StatedDeterminant { k: 1, column: Some(1), text: "a" },
    StatedDeterminant { k: 3, column: Some(1), text: "a(-b+1)" },
    StatedDeterminant { k: 3, column: Some(2), text: "a" },
    StatedDeterminant { k: 3, column: Some(3), text: "a(-b^2+b+1)" },
    StatedDeterminant { k: 5, column: Some(1), text: "a(b^3-b^2-2b+1)" },
    StatedDeterminant { k: 5, column: Some(2), text: "a(-b+1)" },
    StatedDeterminant { k: 5, column: Some(3), text: "a" },
    StatedDeterminant { k: 5, column: Some(4), text: "a(-b^2+b+1)" },
    StatedDeterminant { k: 5, column: Some(5), text: "a(b^4-b^3-3b^2+2b+1)" },
];

impl StatedDeterminant {
    /// The stated value as a polynomial in `b`, with the factor `a` removed.
    pub fn polynomial(&self) -> Result<BPolynomial> {
        let t = self.text.trim();
        if self.column.is_none() {
            return BPolynomial::parse(t);
        }
        let bad = || Error::PolyParse { input: t.to_string(), reason: "expected a or a(...)".into() };
        let rest = t.strip_prefix('a').ok_or_else(bad)?.trim();
        if rest.is_empty() {
            return Ok(BPolynomial::one());
        }
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        BPolynomial::parse(inner)
    }

    /// The value computed from [`build_system_matrix`].
    pub fn computed(&self) -> BPolynomial {
        match self.column {
            None => poly_det(&build_system_matrix(self.k)).expect("exact in Z[b]"),
            Some(l) => cramer_numerators(self.k)[l - 1].clone(),
        }
    }

    pub fn label(&self) -> String {
        match self.column {
            None => format!("det A (k={})", self.k),
            Some(l) => format!("det A_{l} (k={})", self.k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub stated: StatedDeterminant,
    pub stated_value: BPolynomial,
    pub computed: BPolynomial,
}

/// Stated values that disagree with direct computation.
pub fn stated_discrepancies() -> Vec<Discrepancy> {
    STATED_DETERMINANTS
        .iter()
        .filter_map(|s| {
            let stated_value = s.polynomial().expect("stated values parse");
            let computed = s.computed();
            (stated_value != computed).then(|| Discrepancy { stated: *s, stated_value, computed })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(c: &[i64]) -> BPolynomial {
        BPolynomial::from_i64s(c)
    }

    #[test]
    fn matrix_k2() {
        let expected = PolyMatrix::from_linear(&[&[(1, 0), (0, -1)], &[(0, -1), (1, -1)]]);
        assert_eq!(build_system_matrix(2), expected);
    }

    #[test]
    fn matrix_k3() {
        let expected = PolyMatrix::from_linear(&[
            &[(1, 0), (0, 0), (0, -1)],
            &[(0, 0), (1, -1), (0, -1)],
            &[(0, -1), (0, -1), (1, -1)],
        ]);
        assert_eq!(build_system_matrix(3), expected);
    }

    #[test]
    fn matrix_k1_is_one_minus_b() {
        assert_eq!(build_system_matrix(1), PolyMatrix::from_linear(&[&[(1, -1)]]));
    }

    #[test]
    fn matrices_k4_k5_k6() {
        let z = (0, 0);
        let one = (1, 0);
        let mb = (0, -1);
        let omb = (1, -1);
        assert_eq!(
            build_system_matrix(4),
            PolyMatrix::from_linear(&[&[one, z, z, mb], &[z, one, mb, mb], &[z, mb, omb, mb], &[mb, mb, mb, omb]])
        );
        assert_eq!(
            build_system_matrix(5),
            PolyMatrix::from_linear(&[
                &[one, z, z, z, mb],
                &[z, one, z, mb, mb],
                &[z, z, omb, mb, mb],
                &[z, mb, mb, omb, mb],
                &[mb, mb, mb, mb, omb],
            ])
        );
        assert_eq!(
            build_system_matrix(6),
            PolyMatrix::from_linear(&[
                &[one, z, z, z, z, mb],
                &[z, one, z, z, mb, mb],
                &[z, z, one, mb, mb, mb],
                &[z, z, mb, omb, mb, mb],
                &[z, mb, mb, mb, omb, mb],
                &[mb, mb, mb, mb, mb, omb],
            ])
        );
    }

    #[test]
    fn determinants() {
        assert_eq!(poly_det(&build_system_matrix(2)).unwrap(), bp(&[1, -1, -1]));
        assert_eq!(poly_det(&build_system_matrix(4)).unwrap(), bp(&[1, -2, -3, 1, 1]));
        assert_eq!(poly_det(&build_system_matrix(5)).unwrap(), bp(&[1, -3, -3, 4, 1, -1]));
    }

    #[test]
    fn bareiss_handles_zero_pivot() {
        // [[0, 1], [1, b]] has determinant -1.
        let m = PolyMatrix::from_linear(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 1)]]);
        assert_eq!(poly_det(&m).unwrap(), bp(&[-1]));
        assert_eq!(det_cofactor(&m), bp(&[-1]));
        let singular = PolyMatrix::from_linear(&[&[(0, 0), (1, 0)], &[(0, 0), (0, 1)]]);
        assert!(poly_det(&singular).unwrap().is_zero());
    }

    #[test]
    fn bareiss_agrees_with_cofactor_expansion() {
        for k in 1..=6 {
            let a = build_system_matrix(k);
            assert_eq!(poly_det(&a).unwrap(), det_cofactor(&a), "k={k}");
            for col in 0..k as usize {
                let al = a.with_column(col, &BPolynomial::one());
                assert_eq!(poly_det(&al).unwrap(), det_cofactor(&al), "k={k} col={col}");
            }
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(det_closed_form(2), bp(&[1, -1, -1]));
        assert_eq!(det_closed_form(3), bp(&[1, -2, -1, 1]));
        assert_eq!(det_closed_form(6), bp(&[1, -3, -6, 4, 5, -1, -1]));
        assert_eq!(det_closed_form(1), bp(&[1, -1]));
    }

    #[test]
    fn closed_form_matches_elimination() {
        for k in 1..=14 {
            assert_eq!(det_closed_form(k), poly_det(&build_system_matrix(k)).unwrap(), "k={k}");
            assert_eq!(det_closed_form(k).constant_term(), BigInt::from(1));
        }
    }

    #[test]
    fn cramer_values() {
        assert_eq!(cramer_numerators(2), vec![bp(&[1]), bp(&[1, 1])]);
        assert_eq!(cramer_numerators(4)[1], bp(&[1]));
        assert_eq!(cramer_numerators(5)[4], bp(&[1, 2, -3, -1, 1]));
    }

    #[test]
    fn term_sums() {
        assert_eq!(term_sum(2), bp(&[2, 1]));
        assert_eq!(term_sum(3), bp(&[3, 0, -1]));
        assert_eq!(term_sum(1), bp(&[1]));
        for k in 1..=14 {
            let total: BPolynomial = cramer_numerators(k).iter().sum();
            assert_eq!(total, term_sum(k), "k={k}");
        }
    }

    #[test]
    fn permutation_is_a_bijection() {
        for k in 1..=10 {
            let mut sigma = term_permutation(k).expect("multiset equality");
            sigma.sort_unstable();
            assert_eq!(sigma, (0..k as usize).collect::<Vec<_>>());
        }
        assert_eq!(term_permutation(4).unwrap(), vec![2, 0, 1, 3]);
    }

    #[test]
    fn running_sum_form_holds_only_at_first_column() {
        assert_eq!(partial_sum_mismatches(1), Vec::<usize>::new());
        assert_eq!(partial_sum_mismatches(2), vec![2]);
        assert_eq!(partial_sum_mismatches(4), vec![1, 2, 3, 4]);
    }

    #[test]
    fn conditional_gfs_k2_coefficients() {
        let g = solve_conditional_gfs(2);
        assert_eq!(g[0].coefficient(1), QPolynomial::one());
        assert_eq!(g[1].coefficient(1), QPolynomial::one());
        assert_eq!(g[0].coefficient(2), QPolynomial::from_i64s(&[1, 1]));
        assert_eq!(g[1].coefficient(2), QPolynomial::from_i64s(&[0, 2]));
    }

    #[test]
    fn conditional_gfs_sum_to_whole() {
        for k in 1..=5 {
            let g = solve_conditional_gfs(k);
            let mut sum = RationalGF::one();
            for gl in &g {
                sum = &sum + gl;
            }
            assert!(sum.same_function(&gkcon_gf(k)), "k={k}");
        }
    }

    #[test]
    fn implicit_relation_is_one() {
        for k in 1..=4 {
            let lhs = implicit_relation_lhs(k, &solve_conditional_gfs(k));
            assert!(lhs.same_function(&RationalGF::one()), "k={k}");
        }
    }

    #[test]
    fn stated_values_parse_and_only_two_disagree() {
        for s in STATED_DETERMINANTS {
            s.polynomial().unwrap();
        }
        let d = stated_discrepancies();
        let labels: Vec<String> = d.iter().map(|x| x.stated.label()).collect();
        assert_eq!(labels, ["det A (k=1)", "det A_2 (k=2)"]);
        assert_eq!(d[1].stated_value, bp(&[1, -1]));
        assert_eq!(d[1].computed, bp(&[1, 1]));
        assert_eq!(d[0].computed, bp(&[1, -1]));
    }
}
