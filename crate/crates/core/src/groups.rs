//! Finite groups given by multiplication tables, normalized 3-cocycles, and
//! the twisted group algebras `kG` they define. Also two small controls: the
//! bialgebra of the monoid `{1, e}` with `e² = e`, and `H = 𝕜`.

use num_integer::Integer;

use crate::dqb::{validate_dqb, DqbError, DualQuasiBialgebra};
use crate::exactmath::{FieldSpec, Matrix, Scalar, Tensor};
use crate::preantipode::{check_antipode, AntipodeData, PreantipodeError};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group table: {0}")]
    Table(String),
    #[error("cocycle has {found} values, expected {expected}")]
    MissingValues { expected: usize, found: usize },
    #[error("invalid cocycle: {}", failing(.0))]
    InvalidCocycle(Report),
    #[error("cyclic cocycle needs n >= 1 and 0 <= r < n (got n = {n}, r = {r})")]
    CyclicParameters { n: u32, r: u32 },
    #[error(transparent)]
    Dqb(#[from] DqbError),
    #[error("the twisted group algebra fails an axiom: {}", failing(.0))]
    NotADqb(Report),
    #[error(transparent)]
    Antipode(#[from] PreantipodeError),
}

fn failing(r: &Report) -> String {
    r.failures().map(|e| e.axiom.as_str()).collect::<Vec<_>>().join(", ")
}

/// A finite group on the elements `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub order: usize,
    /// `table[a][b]` is the index of `ab`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl GroupData {
    /// Validates the table (closure, associativity, identity) and computes inverses.
    #[allow(clippy::needless_range_loop)]
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let order = table.len();
        let bad = |msg: String| Err(GroupError::Table(msg));
        if order == 0 {
            return bad("empty group".into());
        }
        if identity >= order {
            return bad(format!("identity {identity} out of range"));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return bad(format!("row {a} has {} entries", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= order) {
                return bad(format!("entry {x} in row {a} out of range"));
            }
        }
        for a in 0..order {
            if table[identity][a] != a || table[a][identity] != a {
                return bad(format!("{identity} is not a two-sided identity for {a}"));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            match (0..order).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverse.push(b),
                None => return bad(format!("{a} has no inverse")),
            }
        }
        Ok(GroupData { order, table, identity, inverse })
    }

    /// `ℤ/n` with element `a` standing for `g^a`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupData::new(table, 0).expect("cyclic table is a group")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// Values `θ(g, h, k)` on all triples, flattened as `(g·|G| + h)·|G| + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    pub field: FieldSpec,
    pub values: Vec<Scalar>,
}

impl Cocycle {
    pub fn trivial(group: &GroupData) -> Self {
        Cocycle { field: FieldSpec::Rationals, values: vec![Scalar::one(); group.order.pow(3)] }
    }

    pub fn get(&self, order: usize, g: usize, h: usize, k: usize) -> &Scalar {
        &self.values[(g * order + h) * order + k]
    }
}

/// Checks that `θ` is nonzero, normalized (`θ(g, 1, h) = 1`) and satisfies
/// `θ(h,k,l) θ(g,hk,l) θ(g,h,k) = θ(g,h,kl) θ(gh,k,l)`.
pub fn validate_cocycle(group: &GroupData, theta: &Cocycle) -> Result<Report, GroupError> {
    let n = group.order;
    if theta.values.len() != n.pow(3) {
        return Err(GroupError::MissingValues { expected: n.pow(3), found: theta.values.len() });
    }
    let t = |g, h, k| theta.get(n, g, h, k).clone();
    let mut report = Report::new();
    match (0..n.pow(3)).find(|&i| theta.values[i].is_zero()) {
        Some(i) => report.fail("cocycle-nonzero", vec![i / (n * n), (i / n) % n, i % n], "0", "nonzero"),
        None => report.pass("cocycle-nonzero"),
    }
    let pairs = (0..n).flat_map(|g| (0..n).map(move |h| vec![g, h]));
    report.check("cocycle-normalized", pairs, |x| {
        (Tensor::scalar(t(x[0], group.identity, x[1])), Tensor::scalar(Scalar::one()))
    });
    let quadruples = (0..n.pow(4)).map(|i| vec![i / n.pow(3), (i / (n * n)) % n, (i / n) % n, i % n]);
    report.check("cocycle-identity", quadruples, |x| {
        let (g, h, k, l) = (x[0], x[1], x[2], x[3]);
        let lhs = t(h, k, l) * t(g, group.mul(h, k), l) * t(g, h, k);
        let rhs = t(g, h, group.mul(k, l)) * t(group.mul(g, h), k, l);
        (Tensor::scalar(lhs), Tensor::scalar(rhs))
    });
    Ok(report)
}

/// `θ(g^a, g^b, g^c) = ζ_n^{r·a·⌊(b+c)/n⌋}` on `ℤ/n`, with `a, b, c ∈ {0, …, n-1}`.
///
/// The field is the smallest cyclotomic field containing the values:
/// `ℚ(ζ_m)` with `m = n / gcd(n, r)`, and `ℚ` when `m ≤ 2`.
pub fn cyclic_cocycle(n: u32, r: u32) -> Result<Cocycle, GroupError> {
    if n == 0 || r >= n {
        return Err(GroupError::CyclicParameters { n, r });
    }
    let g = n.gcd(&r);
    let m = n / g;
    let step = (r / g) as i64;
    let size = n as usize;
    let mut values = Vec::with_capacity(size.pow(3));
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                let carry = ((b + c) / size) as i64;
                values.push(Scalar::root_of_unity(m, step * a as i64 * carry));
            }
        }
    }
    let field = if m <= 2 { FieldSpec::Rationals } else { FieldSpec::cyclotomic(m) };
    let theta = Cocycle { field, values };
    let report = validate_cocycle(&GroupData::cyclic(size), &theta)?;
    if !report.passed() {
        return Err(GroupError::InvalidCocycle(report));
    }
    Ok(theta)
}

/// `kG` with grouplike basis, product from the table and `ω` the trilinear
/// extension of `θ`. The result is checked with [`validate_dqb`].
pub fn group_dqb(group: &GroupData, theta: &Cocycle) -> Result<DualQuasiBialgebra, GroupError> {
    let report = validate_cocycle(group, theta)?;
    if !report.passed() {
        return Err(GroupError::InvalidCocycle(report));
    }
    let n = group.order;
    let mut delta = Matrix::zeros(n * n, n);
    let mut mul = Matrix::zeros(n, n * n);
    for a in 0..n {
        delta[(a * n + a, a)] = Scalar::one();
        for b in 0..n {
            mul[(group.mul(a, b), a * n + b)] = Scalar::one();
        }
    }
    let counit = Matrix::row_vector(vec![Scalar::one(); n]);
    let mut unit_vec = vec![Scalar::zero(); n];
    unit_vec[group.identity] = Scalar::one();
    let unit = Matrix::column_vector(unit_vec);
    let omega = Matrix::row_vector(theta.values.clone());
    let inverse = theta.values.iter().map(|v| v.inv().expect("validated nonzero")).collect();
    let omega_inv = Matrix::row_vector(inverse);
    let h = DualQuasiBialgebra::new(theta.field, n, delta, counit, mul, unit, omega, Some(omega_inv))?;
    let report = validate_dqb(&h);
    if !report.passed() {
        return Err(GroupError::NotADqb(report));
    }
    Ok(h)
}

/// `s(g) = g⁻¹`, `α(g) = 1`, `β(g) = θ(g, g⁻¹, g)⁻¹`, checked with [`check_antipode`].
pub fn group_antipode_data(group: &GroupData, theta: &Cocycle) -> Result<AntipodeData, GroupError> {
    let h = group_dqb(group, theta)?;
    let n = group.order;
    let mut s = Matrix::zeros(n, n);
    for g in 0..n {
        s[(group.inverse[g], g)] = Scalar::one();
    }
    let alpha = Matrix::row_vector(vec![Scalar::one(); n]);
    let beta = Matrix::row_vector(
        (0..n)
            .map(|g| theta.get(n, g, group.inverse[g], g).inv().expect("validated nonzero"))
            .collect(),
    );
    let data = AntipodeData { s, alpha, beta };
    let report = check_antipode(&h, &data)?;
    if !report.passed() {
        return Err(PreantipodeError::InvalidAntipode(report).into());
    }
    Ok(data)
}

/// `θ(g, g⁻¹, g)⁻¹ g⁻¹` as the matrix of a map `kG → kG`.
pub fn group_preantipode_formula(group: &GroupData, theta: &Cocycle) -> Matrix {
    let n = group.order;
    let mut s = Matrix::zeros(n, n);
    for g in 0..n {
        let inv = group.inverse[g];
        s[(inv, g)] = theta.get(n, g, inv, g).inv().expect("nonzero cocycle");
    }
    s
}

/// `k{1, e}` with `e² = e`, both basis elements grouplike and `ω` trivial.
pub fn idempotent_monoid_bialgebra() -> DualQuasiBialgebra {
    let mut delta = Matrix::zeros(4, 2);
    delta[(0, 0)] = Scalar::one();
    delta[(3, 1)] = Scalar::one();
    let counit = Matrix::row_vector(vec![Scalar::one(), Scalar::one()]);
    // 1·1 = 1, otherwise e
    let mul = Matrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 1, 1]]);
    let unit = Matrix::column_vector(vec![Scalar::one(), Scalar::zero()]);
    let omega = Matrix::row_vector(vec![Scalar::one(); 8]);
    DualQuasiBialgebra::new(FieldSpec::Rationals, 2, delta, counit, mul, unit, omega.clone(), Some(omega))
        .expect("shapes are consistent")
}

/// The one-dimensional dual quasi-bialgebra `𝕜`.
pub fn trivial_dqb() -> DualQuasiBialgebra {
    let one = Matrix::identity(1);
    DualQuasiBialgebra::new(FieldSpec::Rationals, 1, one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), Some(one))
        .expect("shapes are consistent")
}

/// The twisted group algebra of `ℤ/n` with [`cyclic_cocycle`].
pub fn cyclic_dqb(n: u32, r: u32) -> Result<DualQuasiBialgebra, GroupError> {
    let theta = cyclic_cocycle(n, r)?;
    group_dqb(&GroupData::cyclic(n as usize), &theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preantipode::{check_preantipode, preantipode_from_antipode, solve_preantipode};

    #[test]
    fn z2_sign_cocycle_matches_product_formula() {
        let theta = cyclic_cocycle(2, 1).unwrap();
        assert_eq!(theta.field, FieldSpec::Rationals);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let expected = if a * b * c == 1 { -1 } else { 1 };
                    assert_eq!(theta.get(2, a, b, c), &Scalar::from_int(expected));
                }
            }
        }
    }

    #[test]
    fn cyclic_cocycles_validate() {
        for n in 1..=6 {
            for r in 0..n {
                let theta = cyclic_cocycle(n, r).unwrap();
                let report = validate_cocycle(&GroupData::cyclic(n as usize), &theta).unwrap();
                assert!(report.passed(), "n={n} r={r}");
            }
        }
        assert!(cyclic_cocycle(3, 3).is_err());
        assert!(cyclic_cocycle(0, 0).is_err());
    }

    #[test]
    fn zero_shift_is_trivial() {
        let theta = cyclic_cocycle(5, 0).unwrap();
        assert!(theta.values.iter().all(Scalar::is_one));
        assert_eq!(theta, Cocycle::trivial(&GroupData::cyclic(5)));
    }

    #[test]
    fn unnormalized_cocycle_is_rejected() {
        let g = GroupData::cyclic(2);
        let mut theta = Cocycle::trivial(&g);
        // θ(g, 1, g) = -1
        theta.values[5] = Scalar::from_int(-1);
        let report = validate_cocycle(&g, &theta).unwrap();
        let w = report.get("cocycle-normalized").unwrap().witness().unwrap();
        assert_eq!(w.tuple, vec![1, 1]);
        assert!(matches!(group_dqb(&g, &theta), Err(GroupError::InvalidCocycle(_))));
    }

    #[test]
    fn missing_values_are_an_error() {
        let g = GroupData::cyclic(2);
        let theta = Cocycle { field: FieldSpec::Rationals, values: vec![Scalar::one(); 7] };
        assert_eq!(validate_cocycle(&g, &theta), Err(GroupError::MissingValues { expected: 8, found: 7 }));
    }

    #[test]
    fn bad_tables_are_rejected() {
        assert!(GroupData::new(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        assert!(GroupData::new(vec![vec![0, 1], vec![1, 0]], 1).is_err());
        assert!(GroupData::new(vec![], 0).is_err());
        // ℤ/2 × ℤ/2
        let klein = (0..4).map(|a: usize| (0..4).map(|b| a ^ b).collect()).collect();
        let v = GroupData::new(klein, 0).unwrap();
        assert_eq!(v.inverse, vec![0, 1, 2, 3]);
    }

    #[test]
    fn z4_twisted_algebra_is_quasi_hopf() {
        let g = GroupData::cyclic(4);
        let theta = cyclic_cocycle(4, 1).unwrap();
        assert_eq!(theta.field, FieldSpec::cyclotomic(4));
        let h = group_dqb(&g, &theta).unwrap();
        let data = group_antipode_data(&g, &theta).unwrap();
        let s = preantipode_from_antipode(&h, &data).unwrap();
        assert_eq!(s.s, group_preantipode_formula(&g, &theta));
        // θ(g^a, g^{-a}, g^a) = i^{a·⌊(4-a+a)/4⌋} = i^a for a ≠ 0
        let i = Scalar::root_of_unity(4, 1);
        for a in 1..4 {
            assert_eq!(data.beta[(0, a)], i.pow(-(a as i64)).unwrap());
        }
        let solutions = solve_preantipode(&h).unwrap().unwrap();
        assert!(solutions.contains(&s.s));
    }

    #[test]
    fn idempotent_monoid_has_no_preantipode() {
        let h = idempotent_monoid_bialgebra();
        assert!(validate_dqb(&h).passed());
        assert_eq!(solve_preantipode(&h).unwrap(), None);
    }

    #[test]
    fn trivial_algebra_has_identity_preantipode() {
        let h = trivial_dqb();
        assert!(validate_dqb(&h).passed());
        let solutions = solve_preantipode(&h).unwrap().unwrap();
        assert!(solutions.is_unique());
        assert!(solutions.particular.is_identity());
        assert!(check_preantipode(&h, &solutions.particular).unwrap().passed());
    }
}
