//! Left comodules, bicomodules and right dual quasi-Hopf bicomodules over a
//! dual quasi-bialgebra, together with the functors `T`, `F = T L`,
//! `G = (-)^{coH}` and the unit/counit of the adjunction `F ⊣ G`.
//!
//! Index conventions: for a comodule of dimension `d` over `H` of dimension
//! `n`, `rho_l` is `nd × d` with rows indexed by `(h, v)`, `rho_r` is
//! `dn × d` with rows `(v, h)`, and `act` is `d × dn` with columns `(m, h)`.

use crate::dqb::DualQuasiBialgebra;
use crate::exactmath::{basis_tuples, coordinates, kernel, rank, Matrix, Scalar, Tensor, TensorMap};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComoduleError {
    #[error("malformed comodule: {0}")]
    Shape(String),
    #[error("the left coaction does not preserve the coinvariants (basis vector {0})")]
    CoinvariantsNotStable(usize),
    #[error("eta is not bijective: {dim}-dimensional comodule but {coinvariant_dim}-dimensional coinvariants of F(N)")]
    EtaNotBijective { dim: usize, coinvariant_dim: usize },
}

/// A left `H`-comodule `(V, ρ^l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftComodule {
    pub dim: usize,
    pub rho_l: Matrix,
}

/// An object of `^H M^H`: commuting left and right coactions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicomodule {
    pub dim: usize,
    pub rho_l: Matrix,
    pub rho_r: Matrix,
}

/// An object of `^H M_H^H`: a bicomodule with a right action `μ: M ⊗ H → M`
/// that is bicolinear and associative up to the reassociator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfBicomodule {
    pub dim: usize,
    pub rho_l: Matrix,
    pub rho_r: Matrix,
    pub act: Matrix,
}

/// A subspace given by a `d × r` matrix of linearly independent columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Matrix,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn vector(&self, j: usize) -> Vec<Scalar> {
        self.basis.column(j)
    }

    /// Coordinates of `v` with respect to the basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        coordinates(&self.basis, v)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }
}

fn left_map<'a>(h: &DualQuasiBialgebra, dim: usize, rho_l: &'a Matrix) -> TensorMap<'a> {
    TensorMap::new(rho_l, &[dim], &[h.dim, dim])
}

fn right_map<'a>(h: &DualQuasiBialgebra, dim: usize, rho_r: &'a Matrix) -> TensorMap<'a> {
    TensorMap::new(rho_r, &[dim], &[dim, h.dim])
}

impl LeftComodule {
    /// The trivial comodule `𝕜` with `ρ^l(1) = 1_H ⊗ 1`.
    pub fn trivial(h: &DualQuasiBialgebra) -> Self {
        LeftComodule { dim: 1, rho_l: trivial_left_coaction(h, 1) }
    }

    pub fn left_map(&self, h: &DualQuasiBialgebra) -> TensorMap<'_> {
        left_map(h, self.dim, &self.rho_l)
    }
}

impl Bicomodule {
    pub fn left_map(&self, h: &DualQuasiBialgebra) -> TensorMap<'_> {
        left_map(h, self.dim, &self.rho_l)
    }

    pub fn right_map(&self, h: &DualQuasiBialgebra) -> TensorMap<'_> {
        right_map(h, self.dim, &self.rho_r)
    }

    /// `L(V)`: the left comodule `V` with trivial right coaction.
    pub fn from_left(h: &DualQuasiBialgebra, v: &LeftComodule) -> Self {
        Bicomodule { dim: v.dim, rho_l: v.rho_l.clone(), rho_r: trivial_right_coaction(h, v.dim) }
    }

    /// `°H•`: `H` with trivial left coaction and `ρ^r = Δ`.
    pub fn regular_right(h: &DualQuasiBialgebra) -> Self {
        Bicomodule { dim: h.dim, rho_l: trivial_left_coaction(h, h.dim), rho_r: h.delta.clone() }
    }

    /// `•H•`: `H` with `ρ^l = ρ^r = Δ`.
    pub fn regular(h: &DualQuasiBialgebra) -> Self {
        Bicomodule { dim: h.dim, rho_l: h.delta.clone(), rho_r: h.delta.clone() }
    }
}

impl HopfBicomodule {
    pub fn left_map(&self, h: &DualQuasiBialgebra) -> TensorMap<'_> {
        left_map(h, self.dim, &self.rho_l)
    }

    pub fn right_map(&self, h: &DualQuasiBialgebra) -> TensorMap<'_> {
        right_map(h, self.dim, &self.rho_r)
    }

    pub fn act_map(&self, h: &DualQuasiBialgebra) -> TensorMap<'_> {
        TensorMap::new(&self.act, &[self.dim, h.dim], &[self.dim])
    }

    pub fn underlying(&self) -> Bicomodule {
        Bicomodule { dim: self.dim, rho_l: self.rho_l.clone(), rho_r: self.rho_r.clone() }
    }

    /// `e_m`, or `e_m ⊗ e_{h…}` for extra indices in `H`.
    pub fn basis(&self, h: &DualQuasiBialgebra, indices: &[usize]) -> Tensor {
        let mut dims = vec![self.dim];
        dims.extend(std::iter::repeat_n(h.dim, indices.len() - 1));
        Tensor::basis(&dims, indices)
    }

    /// The one-dimensional object over `H = 𝕜` with every structure map the identity.
    pub fn unit_object(h: &DualQuasiBialgebra) -> Self {
        induce_f(h, &LeftComodule::trivial(h))
    }
}

/// `v ↦ 1_H ⊗ v` on a `dim`-dimensional space.
pub fn trivial_left_coaction(h: &DualQuasiBialgebra, dim: usize) -> Matrix {
    let unit = h.unit_vector();
    let mut m = Matrix::zeros(h.dim * dim, dim);
    for v in 0..dim {
        for (i, c) in unit.iter().enumerate() {
            m[(i * dim + v, v)] = c.clone();
        }
    }
    m
}

/// `v ↦ v ⊗ 1_H` on a `dim`-dimensional space.
pub fn trivial_right_coaction(h: &DualQuasiBialgebra, dim: usize) -> Matrix {
    let unit = h.unit_vector();
    let mut m = Matrix::zeros(dim * h.dim, dim);
    for v in 0..dim {
        for (i, c) in unit.iter().enumerate() {
            m[(v * h.dim + i, v)] = c.clone();
        }
    }
    m
}

/// Matrix of a linear map from `⊗ source` to `⊗ target` given its values on basis tuples.
pub(crate) fn matrix_of(source: &[usize], target: &[usize], f: impl Fn(&[usize]) -> Tensor) -> Matrix {
    let columns: Vec<Vec<Scalar>> = basis_tuples(source)
        .map(|x| {
            let t = f(&x);
            debug_assert_eq!(t.dims(), target);
            t.to_dense()
        })
        .collect();
    Matrix::from_columns(target.iter().product(), &columns)
}

fn shape_check(report: &mut Report, checks: &[(&str, &Matrix, (usize, usize))]) -> bool {
    let problems: Vec<String> = checks
        .iter()
        .filter(|(_, m, s)| m.shape() != *s)
        .map(|(name, m, s)| format!("{name} is {}x{}, expected {}x{}", m.rows(), m.cols(), s.0, s.1))
        .collect();
    if problems.is_empty() {
        true
    } else {
        report.malformed("shape", problems.join("; "));
        false
    }
}

fn check_left(h: &DualQuasiBialgebra, report: &mut Report, dim: usize, rho_l: &Matrix) {
    let rho = left_map(h, dim, rho_l);
    let delta = h.delta_map();
    let counit = h.counit_map();
    let base = |x: &[usize]| Tensor::basis(&[dim], x);
    report.check("left-coassociativity", basis_tuples(&[dim]), |x| {
        let t = base(x).apply(0, &rho);
        (t.apply(0, &delta), t.apply(1, &rho))
    });
    report.check("left-counit", basis_tuples(&[dim]), |x| (base(x).apply(0, &rho).apply(0, &counit), base(x)));
}

fn check_right(h: &DualQuasiBialgebra, report: &mut Report, dim: usize, rho_r: &Matrix) {
    let rho = right_map(h, dim, rho_r);
    let delta = h.delta_map();
    let counit = h.counit_map();
    let base = |x: &[usize]| Tensor::basis(&[dim], x);
    report.check("right-coassociativity", basis_tuples(&[dim]), |x| {
        let t = base(x).apply(0, &rho);
        (t.apply(0, &rho), t.apply(1, &delta))
    });
    report.check("right-counit", basis_tuples(&[dim]), |x| (base(x).apply(0, &rho).apply(1, &counit), base(x)));
}

fn check_compatible(h: &DualQuasiBialgebra, report: &mut Report, m: &Bicomodule) {
    let (l, r) = (m.left_map(h), m.right_map(h));
    report.check("bicomodule-compatibility", basis_tuples(&[m.dim]), |x| {
        let t = Tensor::basis(&[m.dim], x);
        (t.apply(0, &l).apply(1, &r), t.apply(0, &r).apply(0, &l))
    });
}

pub fn validate_left_comodule(h: &DualQuasiBialgebra, v: &LeftComodule) -> Report {
    let mut report = Report::new();
    if shape_check(&mut report, &[("rho_l", &v.rho_l, (h.dim * v.dim, v.dim))]) {
        check_left(h, &mut report, v.dim, &v.rho_l);
    }
    report
}

/// Checks that `m` is an object of `^H M^H`.
pub fn validate_bicomodule_object(h: &DualQuasiBialgebra, m: &Bicomodule) -> Report {
    let mut report = Report::new();
    let (n, d) = (h.dim, m.dim);
    if shape_check(&mut report, &[("rho_l", &m.rho_l, (n * d, d)), ("rho_r", &m.rho_r, (d * n, d))]) {
        check_left(h, &mut report, d, &m.rho_l);
        check_right(h, &mut report, d, &m.rho_r);
        check_compatible(h, &mut report, m);
    }
    report
}

/// Checks every axiom of a right dual quasi-Hopf `H`-bicomodule on all
/// basis tuples.
pub fn validate_bicomodule(h: &DualQuasiBialgebra, m: &HopfBicomodule) -> Report {
    let mut report = Report::new();
    let (n, d) = (h.dim, m.dim);
    let shapes_ok = shape_check(
        &mut report,
        &[("rho_l", &m.rho_l, (n * d, d)), ("rho_r", &m.rho_r, (d * n, d)), ("act", &m.act, (d, d * n))],
    );
    if !shapes_ok {
        return report;
    }
    check_left(h, &mut report, d, &m.rho_l);
    check_right(h, &mut report, d, &m.rho_r);
    check_compatible(h, &mut report, &m.underlying());

    let (rho_l, rho_r, act) = (m.left_map(h), m.right_map(h), m.act_map(h));
    let (delta, mul, unit) = (h.delta_map(), h.mul_map(), h.unit_map());

    report.check("action-unit", basis_tuples(&[d]), |x| {
        let t = Tensor::basis(&[d], x);
        (t.apply(1, &unit).apply(0, &act), t)
    });
    // ρ^l(m·h) = m_{-1}h_1 ⊗ m_0·h_2
    report.check("action-left-colinear", basis_tuples(&[d, n]), |x| {
        let t = m.basis(h, x);
        let lhs = t.apply(0, &act).apply(0, &rho_l);
        let rhs = t.apply(0, &rho_l).apply(2, &delta).permute(&[0, 2, 1, 3]).apply(0, &mul).apply(1, &act);
        (lhs, rhs)
    });
    // ρ^r(m·h) = m_0·h_1 ⊗ m_1h_2
    report.check("action-right-colinear", basis_tuples(&[d, n]), |x| {
        let t = m.basis(h, x);
        let lhs = t.apply(0, &act).apply(0, &rho_r);
        let rhs = t.apply(0, &rho_r).apply(2, &delta).permute(&[0, 2, 1, 3]).apply(0, &act).apply(1, &mul);
        (lhs, rhs)
    });
    // (m·h)·k = ω⁻¹(m_{-1}⊗h_1⊗k_1) m_0·(h_2k_2) ω(m_1⊗h_3⊗k_3)
    report.check("action-quasi-associativity", basis_tuples(&[d, n, n]), |x| {
        let t = m.basis(h, x);
        let lhs = t.apply(0, &act).apply(0, &act);
        let rhs = two_sided_twist(h, &t, &rho_l, &rho_r, 1, 1)
            .apply(1, &mul)
            .apply(0, &act);
        (lhs, rhs)
    });
    report
}

/// Starting from `m ⊗ h ⊗ l` (with `m` at factor 0), produces
/// `ω⁻¹(m_{-1}⊗h_1⊗l_1) m_0 ⊗ h_2 ⊗ l_2 ω(m_1⊗h_3⊗l_3)`, where each of the
/// two `ω` factors may be switched off.
fn two_sided_twist(
    h: &DualQuasiBialgebra,
    t: &Tensor,
    rho_l: &TensorMap<'_>,
    rho_r: &TensorMap<'_>,
    left: u8,
    right: u8,
) -> Tensor {
    let delta = h.delta_map();
    let counit = h.counit_map();
    let s = t.apply(0, rho_r).apply(0, rho_l); // m_{-1} m_0 m_1 h l
    let s = s.apply(3, &delta).apply(4, &delta); // m_{-1} m_0 m_1 h1 h2 h3 l
    let s = s.apply(6, &delta).apply(7, &delta); // ... l1 l2 l3
    let s = s.permute(&[0, 3, 6, 1, 4, 7, 2, 5, 8]);
    let s = if left == 1 {
        s.apply(0, &h.omega_inv_map())
    } else {
        s.apply(0, &counit).apply(0, &counit).apply(0, &counit)
    };
    if right == 1 {
        s.apply(3, &h.omega_map())
    } else {
        s.apply(3, &counit).apply(3, &counit).apply(3, &counit)
    }
}

/// `T(M) = M ⊗ H` with codiagonal coactions and the twisted right action.
pub fn free_t(h: &DualQuasiBialgebra, m: &Bicomodule) -> HopfBicomodule {
    let (n, d) = (h.dim, m.dim);
    let (rho_l, rho_r) = (m.left_map(h), m.right_map(h));
    let (delta, mul) = (h.delta_map(), h.mul_map());
    let base = |x: &[usize]| {
        let mut dims = vec![d];
        dims.extend(std::iter::repeat_n(n, x.len() - 1));
        Tensor::basis(&dims, x)
    };
    // ρ^l(m⊗h) = m_{-1}h_1 ⊗ (m_0⊗h_2)
    let new_l = matrix_of(&[d, n], &[n, d, n], |x| {
        base(x).apply(0, &rho_l).apply(2, &delta).permute(&[0, 2, 1, 3]).apply(0, &mul)
    });
    // ρ^r(m⊗h) = (m_0⊗h_1) ⊗ m_1h_2
    let new_r = matrix_of(&[d, n], &[d, n, n], |x| {
        base(x).apply(0, &rho_r).apply(2, &delta).permute(&[0, 2, 1, 3]).apply(2, &mul)
    });
    // (m⊗h)l = ω⁻¹(m_{-1}⊗h_1⊗l_1) m_0⊗h_2l_2 ω(m_1⊗h_3⊗l_3)
    let act = matrix_of(&[d, n, n], &[d, n], |x| two_sided_twist(h, &base(x), &rho_l, &rho_r, 1, 1).apply(1, &mul));
    HopfBicomodule { dim: d * n, rho_l: new_l, rho_r: new_r, act }
}

/// `F(V) = T(L(V))`.
pub fn induce_f(h: &DualQuasiBialgebra, v: &LeftComodule) -> HopfBicomodule {
    free_t(h, &Bicomodule::from_left(h, v))
}

/// `H ⊗̂ H = T(°H•)`.
pub fn hhat(h: &DualQuasiBialgebra) -> HopfBicomodule {
    free_t(h, &Bicomodule::regular_right(h))
}

/// `M^{coH} = { m : ρ^r(m) = m ⊗ 1_H }`.
pub fn coinvariants(h: &DualQuasiBialgebra, m: &HopfBicomodule) -> Subspace {
    let difference = m.rho_r.sub(&trivial_right_coaction(h, m.dim));
    let basis = kernel(&difference);
    Subspace { ambient: m.dim, basis: Matrix::from_columns(m.dim, &basis) }
}

/// `G(M)`: the coinvariants with the restricted left coaction, in the
/// coordinates of `sub`.
pub fn restrict_left(h: &DualQuasiBialgebra, m: &HopfBicomodule, sub: &Subspace) -> Result<LeftComodule, ComoduleError> {
    let (n, d, r) = (h.dim, m.dim, sub.dim());
    let mut rho = Matrix::zeros(n * r, r);
    for j in 0..r {
        let image = m.rho_l.mul_vec(&sub.vector(j));
        for i in 0..n {
            let component = &image[i * d..(i + 1) * d];
            let coords = sub.coordinates(component).ok_or(ComoduleError::CoinvariantsNotStable(j))?;
            for (k, c) in coords.into_iter().enumerate() {
                rho[(i * r + k, j)] = c;
            }
        }
    }
    Ok(LeftComodule { dim: r, rho_l: rho })
}

/// The counit `ε_M : M^{coH} ⊗ H → M, x ⊗ h ↦ x·h`, on the given coinvariant basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounitMap {
    pub coinvariants: Subspace,
    /// `d × rn` matrix, columns indexed by `(coinvariant basis index, basis of H)`.
    pub matrix: Matrix,
}

impl CounitMap {
    pub fn is_bijective(&self) -> bool {
        is_bijective(&self.matrix)
    }
}

pub fn is_bijective(m: &Matrix) -> bool {
    m.rows() == m.cols() && rank(m) == m.rows()
}

pub fn counit_epsilon(h: &DualQuasiBialgebra, m: &HopfBicomodule) -> CounitMap {
    counit_epsilon_on(h, m, coinvariants(h, m))
}

pub fn counit_epsilon_on(h: &DualQuasiBialgebra, m: &HopfBicomodule, sub: Subspace) -> CounitMap {
    let (n, d, r) = (h.dim, m.dim, sub.dim());
    let act = m.act_map(h);
    let mut columns = Vec::with_capacity(r * n);
    for j in 0..r {
        let x = sub.vector(j);
        for k in 0..n {
            let t = Tensor::from_vector(&x).tensor(&Tensor::basis(&[n], &[k])).apply(0, &act);
            columns.push(t.to_dense());
        }
    }
    CounitMap { matrix: Matrix::from_columns(d, &columns), coinvariants: sub }
}

/// Checks that `f: A → B` (a `dim B × dim A` matrix) is left colinear,
/// right colinear and right `H`-linear.
pub fn check_morphism(h: &DualQuasiBialgebra, a: &HopfBicomodule, b: &HopfBicomodule, f: &Matrix) -> Report {
    let mut report = Report::new();
    if !shape_check(&mut report, &[("morphism", f, (b.dim, a.dim))]) {
        return report;
    }
    let n = h.dim;
    let fm = TensorMap::new(f, &[a.dim], &[b.dim]);
    report.check("morphism-left-colinear", basis_tuples(&[a.dim]), |x| {
        let t = Tensor::basis(&[a.dim], x);
        (t.apply(0, &fm).apply(0, &b.left_map(h)), t.apply(0, &a.left_map(h)).apply(1, &fm))
    });
    report.check("morphism-right-colinear", basis_tuples(&[a.dim]), |x| {
        let t = Tensor::basis(&[a.dim], x);
        (t.apply(0, &fm).apply(0, &b.right_map(h)), t.apply(0, &a.right_map(h)).apply(0, &fm))
    });
    report.check("morphism-linear", basis_tuples(&[a.dim, n]), |x| {
        let t = Tensor::basis(&[a.dim, n], x);
        (t.apply(0, &fm).apply(0, &b.act_map(h)), t.apply(0, &a.act_map(h)).apply(0, &fm))
    });
    report
}

/// Checks that `ε_M` is a morphism `F(G(M)) → M` in `^H M_H^H`.
pub fn check_counit_morphism(h: &DualQuasiBialgebra, m: &HopfBicomodule, eps: &CounitMap) -> Result<Report, ComoduleError> {
    let g = restrict_left(h, m, &eps.coinvariants)?;
    let fg = induce_f(h, &g);
    Ok(check_morphism(h, &fg, m, &eps.matrix))
}

/// The unit `η_N : N → F(N)^{coH}, n ↦ n ⊗ 1_H`, in the coordinates of the
/// computed coinvariant basis. Fails when it is not bijective.
pub fn unit_eta(h: &DualQuasiBialgebra, v: &LeftComodule) -> Result<(Matrix, Subspace), ComoduleError> {
    let fv = induce_f(h, v);
    let sub = coinvariants(h, &fv);
    let unit = h.unit_vector();
    let mut columns = Vec::with_capacity(v.dim);
    for j in 0..v.dim {
        let mut e = vec![Scalar::zero(); v.dim];
        e[j] = Scalar::one();
        let image = Tensor::from_vector(&e).tensor(&Tensor::from_vector(&unit)).to_dense();
        let coords = sub.coordinates(&image).ok_or(ComoduleError::CoinvariantsNotStable(j))?;
        columns.push(coords);
    }
    let eta = Matrix::from_columns(sub.dim(), &columns);
    if !is_bijective(&eta) {
        return Err(ComoduleError::EtaNotBijective { dim: v.dim, coinvariant_dim: sub.dim() });
    }
    Ok((eta, sub))
}

/// A left comodule over `H` with grouplike basis: `ρ^l(w_v) = g_v ⊗ w_v` on
/// the basis `w = P e`, re-expressed in the standard basis, where `P` is the
/// invertible `change` matrix (columns are the `w_v`).
pub fn graded_left_comodule(h: &DualQuasiBialgebra, grades: &[usize], change: &Matrix) -> LeftComodule {
    let d = grades.len();
    let mut diag = Matrix::zeros(h.dim * d, d);
    for (v, &g) in grades.iter().enumerate() {
        diag[(g * d + v, v)] = Scalar::one();
    }
    let p_inv = crate::exactmath::inverse(change).expect("change of basis must be invertible");
    // ρ' = (id ⊗ P) ρ P⁻¹
    let lifted = Matrix::identity(h.dim).kron(change);
    LeftComodule { dim: d, rho_l: lifted.mul(&diag).mul(&p_inv) }
}

/// A bicomodule over `H` with grouplike basis whose basis `w = P e` is
/// homogeneous of bidegree `(a_v, b_v)`: `ρ^l(w_v) = a_v ⊗ w_v`,
/// `ρ^r(w_v) = w_v ⊗ b_v`.
pub fn graded_bicomodule(h: &DualQuasiBialgebra, degrees: &[(usize, usize)], change: &Matrix) -> Bicomodule {
    let d = degrees.len();
    let n = h.dim;
    let mut left = Matrix::zeros(n * d, d);
    let mut right = Matrix::zeros(d * n, d);
    for (v, &(a, b)) in degrees.iter().enumerate() {
        left[(a * d + v, v)] = Scalar::one();
        right[(v * n + b, v)] = Scalar::one();
    }
    let p_inv = crate::exactmath::inverse(change).expect("change of basis must be invertible");
    let rho_l = Matrix::identity(n).kron(change).mul(&left).mul(&p_inv);
    let rho_r = change.kron(&Matrix::identity(n)).mul(&right).mul(&p_inv);
    Bicomodule { dim: d, rho_l, rho_r }
}
