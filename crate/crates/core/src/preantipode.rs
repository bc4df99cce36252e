//! Preantipodes: checking, solving, construction from antipode data
//! `(s, α, β)`, and the map `τ : M → M^{coH}` that inverts `ε_M`.

use crate::comodules::{coinvariants, counit_epsilon_on, matrix_of, HopfBicomodule, Subspace};
use crate::dqb::DualQuasiBialgebra;
use crate::exactmath::{basis_tuples, solve_affine, Matrix, Scalar, Tensor, TensorMap};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PreantipodeError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("antipode data fails: {}", failing(.0))]
    InvalidAntipode(Report),
    #[error("not a preantipode: {}", failing(.0))]
    NotAPreantipode(Report),
    #[error("tau identities fail: {}", failing(.0))]
    TauFailed(Report),
    #[error("solver returned a map that fails the axioms: {}", failing(.0))]
    SolverUnsound(Report),
    #[error("not a group algebra: {0}")]
    NotGroupAlgebra(String),
}

fn failing(r: &Report) -> String {
    r.failures().map(|e| e.axiom.as_str()).collect::<Vec<_>>().join(", ")
}

/// A linear map `S: H → H` satisfying the preantipode axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preantipode {
    pub s: Matrix,
}

/// Dual quasi-Hopf data: a coalgebra antimorphism `s` and functionals `α, β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodeData {
    pub s: Matrix,
    pub alpha: Matrix,
    pub beta: Matrix,
}

fn endo_shape(h: &DualQuasiBialgebra, name: &str, s: &Matrix) -> Result<(), String> {
    if s.shape() == (h.dim, h.dim) {
        Ok(())
    } else {
        Err(format!("{name} is {}x{}, expected {}x{}", s.rows(), s.cols(), h.dim, h.dim))
    }
}

fn basis1(h: &DualQuasiBialgebra) -> impl Iterator<Item = Vec<usize>> {
    (0..h.dim).map(|i| vec![i])
}

fn unit_tensor(h: &DualQuasiBialgebra) -> Tensor {
    Tensor::from_vector(&h.unit_vector())
}

type Sides = Vec<(&'static str, Box<dyn Fn(&[usize]) -> (Tensor, Tensor)>)>;

/// The two sides of each preantipode identity, as closures over a basis index.
fn preantipode_sides(h: &DualQuasiBialgebra, s: &Matrix) -> Sides {
    let n = h.dim;
    let hh = h.clone();
    let s = s.clone();
    let col2 = {
        let (h, s) = (hh.clone(), s.clone());
        move |x: &[usize]| {
            let (sm, delta, mul) = (h.endo_map(&s), h.delta_map(), h.mul_map());
            let t = h.basis(x);
            // S(x_2)_1 ⊗ x_1 S(x_2)_2
            let lhs = t.apply(0, &delta).apply(1, &sm).apply(1, &delta).permute(&[1, 0, 2]).apply(1, &mul);
            let rhs = t.apply(0, &sm).tensor(&unit_tensor(&h));
            (lhs, rhs)
        }
    };
    let col1 = {
        let (h, s) = (hh.clone(), s.clone());
        move |x: &[usize]| {
            let (sm, delta, mul) = (h.endo_map(&s), h.delta_map(), h.mul_map());
            let t = h.basis(x);
            // S(x_1)_1 x_2 ⊗ S(x_1)_2
            let lhs = t.apply(0, &delta).apply(0, &sm).apply(0, &delta).permute(&[0, 2, 1]).apply(0, &mul);
            let rhs = unit_tensor(&h).tensor(&t.apply(0, &sm));
            (lhs, rhs)
        }
    };
    let fond = {
        let (h, s) = (hh.clone(), s.clone());
        move |x: &[usize]| {
            let sm = h.endo_map(&s);
            let t = h.split(&h.basis(x), 1, 3).apply(1, &sm).apply(0, &h.omega_map());
            (t, h.basis(x).apply(0, &h.counit_map()))
        }
    };
    let eps_s = hh.counit.mul(&s);
    // h_1 S(h_2) = εS(h) 1_H = S(h_1) h_2, obtained by applying ε to one leg
    // of each of the two colinearity axioms
    let three_left = {
        let (h, s, eps_s) = (hh.clone(), s.clone(), eps_s.clone());
        move |x: &[usize]| {
            let es = TensorMap::new(&eps_s, &[n], &[]);
            let t = h.basis(x);
            let lhs = t.apply(0, &h.delta_map()).apply(1, &h.endo_map(&s)).apply(0, &h.mul_map());
            (lhs, t.apply(0, &es).tensor(&unit_tensor(&h)))
        }
    };
    let three_right = {
        let h = hh;
        move |x: &[usize]| {
            let es = TensorMap::new(&eps_s, &[n], &[]);
            let t = h.basis(x);
            let lhs = t.apply(0, &h.delta_map()).apply(0, &h.endo_map(&s)).apply(0, &h.mul_map());
            (lhs, t.apply(0, &es).tensor(&unit_tensor(&h)))
        }
    };
    vec![
        ("col2S", Box::new(col2)),
        ("col1S", Box::new(col1)),
        ("fondS", Box::new(fond)),
        ("3S-left", Box::new(three_left)),
        ("3S-right", Box::new(three_right)),
    ]
}

/// Checks the three preantipode axioms and the derived identity
/// `h_1 S(h_2) = εS(h) 1_H = S(h_1) h_2` on every basis element.
pub fn check_preantipode(h: &DualQuasiBialgebra, s: &Matrix) -> Result<Report, PreantipodeError> {
    endo_shape(h, "S", s).map_err(PreantipodeError::Shape)?;
    let mut report = Report::new();
    for (name, sides) in preantipode_sides(h, s) {
        report.check(name, basis1(h), |x| sides(x));
    }
    Ok(report)
}

/// Concatenation of `lhs - rhs` over the three defining axioms and all basis
/// elements; affine in `S`.
fn residual(h: &DualQuasiBialgebra, s: &Matrix) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (_, sides) in preantipode_sides(h, s).into_iter().take(3) {
        for x in basis1(h) {
            let (l, r) = sides(&x);
            out.extend(l.sub(&r).to_dense());
        }
    }
    out
}

/// The affine space of all preantipodes: `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreantipodeSolutions {
    pub particular: Matrix,
    pub kernel: Vec<Matrix>,
}

impl PreantipodeSolutions {
    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }

    /// Whether `s` belongs to the solution set.
    pub fn contains(&self, s: &Matrix) -> bool {
        if s.shape() != self.particular.shape() {
            return false;
        }
        let diff = s.sub(&self.particular);
        if self.kernel.is_empty() {
            return diff.is_zero();
        }
        let columns: Vec<Vec<Scalar>> = self.kernel.iter().map(|k| k.entries().to_vec()).collect();
        let basis = Matrix::from_columns(diff.entries().len(), &columns);
        crate::exactmath::coordinates(&basis, diff.entries()).is_some()
    }

    /// `particular + Σ c_i kernel_i`.
    pub fn point(&self, coeffs: &[Scalar]) -> Matrix {
        assert_eq!(coeffs.len(), self.kernel.len());
        self.kernel.iter().zip(coeffs).fold(self.particular.clone(), |acc, (k, c)| acc.add(&k.scale(c)))
    }
}

/// The axioms as `A vec(S) = b`, with `vec(S)` the row-major entries of `S`.
pub fn linear_system(h: &DualQuasiBialgebra) -> (Matrix, Vec<Scalar>) {
    let n = h.dim;
    let zero = Matrix::zeros(n, n);
    let constant = residual(h, &zero);
    let columns: Vec<Vec<Scalar>> = (0..n * n)
        .map(|idx| {
            let mut e = zero.clone();
            e[(idx / n, idx % n)] = Scalar::one();
            residual(h, &e).iter().zip(&constant).map(|(a, b)| a - b).collect()
        })
        .collect();
    let rhs = constant.iter().map(|c| -c).collect();
    (Matrix::from_columns(constant.len(), &columns), rhs)
}

/// Solves the three preantipode axioms as a linear system in the `n²`
/// entries of `S`. `None` certifies that no preantipode exists.
pub fn solve_preantipode(h: &DualQuasiBialgebra) -> Result<Option<PreantipodeSolutions>, PreantipodeError> {
    let n = h.dim;
    let (a, rhs) = linear_system(h);
    let solution = solve_affine(&a, &rhs).expect("system assembled with matching dimensions");
    let Some(solution) = solution else {
        return Ok(None);
    };
    let particular = Matrix::from_vec(n, n, solution.particular);
    let kernel: Vec<Matrix> = solution.kernel.into_iter().map(|k| Matrix::from_vec(n, n, k)).collect();
    let solutions = PreantipodeSolutions { particular, kernel };
    // affine axioms: the particular point and one step along each kernel
    // direction determine the whole set
    let mut probes = vec![solutions.particular.clone()];
    probes.extend(solutions.kernel.iter().map(|k| solutions.particular.add(k)));
    for probe in &probes {
        let report = check_preantipode(h, probe)?;
        if !report.passed() {
            return Err(PreantipodeError::SolverUnsound(report));
        }
    }
    Ok(Some(solutions))
}

fn antipode_shapes(h: &DualQuasiBialgebra, data: &AntipodeData) -> Result<(), PreantipodeError> {
    let mut problems = Vec::new();
    if let Err(e) = endo_shape(h, "s", &data.s) {
        problems.push(e);
    }
    for (name, f) in [("alpha", &data.alpha), ("beta", &data.beta)] {
        if f.shape() != (1, h.dim) {
            problems.push(format!("{name} is {}x{}, expected 1x{}", f.rows(), f.cols(), h.dim));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(PreantipodeError::Shape(problems.join("; ")))
    }
}

/// Checks that `s` is a coalgebra antimorphism and the three antipode
/// identities, the last one in both of its forms.
pub fn check_antipode(h: &DualQuasiBialgebra, data: &AntipodeData) -> Result<Report, PreantipodeError> {
    antipode_shapes(h, data)?;
    let (s, alpha, beta) = (h.endo_map(&data.s), h.functional_map(&data.alpha, 1), h.functional_map(&data.beta, 1));
    let (delta, counit, mul) = (h.delta_map(), h.counit_map(), h.mul_map());
    let unit = unit_tensor(h);
    let mut report = Report::new();
    report.check("s-antimorphism-comultiplication", basis1(h), |x| {
        let t = h.basis(x);
        (t.apply(0, &s).apply(0, &delta), t.apply(0, &delta).apply(0, &s).apply(1, &s).permute(&[1, 0]))
    });
    report.check("s-antimorphism-counit", basis1(h), |x| {
        let t = h.basis(x);
        (t.apply(0, &s).apply(0, &counit), t.apply(0, &counit))
    });
    report.check("ant1", basis1(h), |x| {
        let t = h.basis(x);
        let lhs = h.split(&t, 1, 3).apply(1, &beta).apply(1, &s).apply(0, &mul);
        (lhs, t.apply(0, &beta).tensor(&unit))
    });
    report.check("ant2", basis1(h), |x| {
        let t = h.basis(x);
        let lhs = h.split(&t, 1, 3).apply(1, &alpha).apply(0, &s).apply(0, &mul);
        (lhs, t.apply(0, &alpha).tensor(&unit))
    });
    report.check("ant3-omega", basis1(h), |x| {
        let t = h.basis(x);
        // ω(h_1 ⊗ β(h_2)s(h_3)α(h_4) ⊗ h_5)
        let lhs = h.split(&t, 1, 5).apply(1, &beta).apply(2, &alpha).apply(1, &s).apply(0, &h.omega_map());
        (lhs, t.apply(0, &counit))
    });
    report.check("ant3-omega-inverse", basis1(h), |x| {
        let t = h.basis(x);
        // ω⁻¹(s(h_1) ⊗ α(h_2)h_3β(h_4) ⊗ s(h_5))
        let lhs = h
            .split(&t, 1, 5)
            .apply(1, &alpha)
            .apply(2, &beta)
            .apply(0, &s)
            .apply(2, &s)
            .apply(0, &h.omega_inv_map());
        (lhs, t.apply(0, &counit))
    });
    Ok(report)
}

/// `S = β ∗ s ∗ α`, checked to be a preantipode.
pub fn preantipode_from_antipode(h: &DualQuasiBialgebra, data: &AntipodeData) -> Result<Preantipode, PreantipodeError> {
    let report = check_antipode(h, data)?;
    if !report.passed() {
        return Err(PreantipodeError::InvalidAntipode(report));
    }
    let (s, alpha, beta) = (h.endo_map(&data.s), h.functional_map(&data.alpha, 1), h.functional_map(&data.beta, 1));
    let n = h.dim;
    let matrix = matrix_of(&[n], &[n], |x| h.split(&h.basis(x), 1, 3).apply(0, &beta).apply(1, &alpha).apply(0, &s));
    let report = check_preantipode(h, &matrix)?;
    if !report.passed() {
        return Err(PreantipodeError::NotAPreantipode(report));
    }
    Ok(Preantipode { s: matrix })
}

/// `τ` together with `ψ = ε_M⁻¹` and the verification of its identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauMap {
    pub coinvariants: Subspace,
    /// `τ` as an endomorphism of `M` (`d × d`), image in the coinvariants.
    pub raw: Matrix,
    /// `τ` in coinvariant coordinates (`r × d`).
    pub tau: Matrix,
    /// `ψ(m) = τ(m_0) ⊗ m_1` (`rn × d`).
    pub psi: Matrix,
    pub report: Report,
}

/// `τ(m) = ω[m_{-1} ⊗ S(m_1)_1 ⊗ m_2] m_0 S(m_1)_2`, as a `d × d` matrix.
pub fn tau_candidate(h: &DualQuasiBialgebra, s: &Matrix, m: &HopfBicomodule) -> Matrix {
    let (sm, delta) = (h.endo_map(s), h.delta_map());
    let (rho_l, rho_r, act) = (m.left_map(h), m.right_map(h), m.act_map(h));
    matrix_of(&[m.dim], &[m.dim], |x| {
        Tensor::basis(&[m.dim], x)
            .apply(0, &rho_r)
            .apply(1, &delta) // m_0 m_1 m_2
            .apply(0, &rho_l) // m_{-1} m_0 m_1 m_2
            .apply(2, &sm)
            .apply(2, &delta) // m_{-1} m_0 S_1 S_2 m_2
            .permute(&[0, 2, 4, 1, 3])
            .apply(0, &h.omega_map())
            .apply(0, &act)
    })
}

/// Checks the identities characterising `τ`, with `raw` a `d × d` matrix.
pub fn check_tau(h: &DualQuasiBialgebra, m: &HopfBicomodule, raw: &Matrix, sub: &Subspace) -> Report {
    let (n, d) = (h.dim, m.dim);
    let tm = TensorMap::new(raw, &[d], &[d]);
    let (rho_l, rho_r, act) = (m.left_map(h), m.right_map(h), m.act_map(h));
    let (mul, counit) = (h.mul_map(), h.counit_map());
    let mut report = Report::new();
    report.check("tau-coinvariant", basis_tuples(&[d]), |x| {
        let t = Tensor::basis(&[d], x).apply(0, &tm);
        (t.apply(0, &rho_r), t.tensor(&unit_tensor(h)))
    });
    // τ(mh) = ω⁻¹[τ(m_0)_{-1} ⊗ m_1 ⊗ h] τ(m_0)_0
    report.check("tau-mh", basis_tuples(&[d, n]), |x| {
        let t = m.basis(h, x);
        let lhs = t.apply(0, &act).apply(0, &tm);
        let rhs = t
            .apply(0, &rho_r)
            .apply(0, &tm)
            .apply(0, &rho_l)
            .permute(&[0, 2, 3, 1])
            .apply(0, &h.omega_inv_map());
        (lhs, rhs)
    });
    // m_{-1} ⊗ τ(m_0) = τ(m_0)_{-1} m_1 ⊗ τ(m_0)_0
    report.check("tau-left-colinear", basis_tuples(&[d]), |x| {
        let t = Tensor::basis(&[d], x);
        let lhs = t.apply(0, &rho_l).apply(1, &tm);
        let rhs = t.apply(0, &rho_r).apply(0, &tm).apply(0, &rho_l).permute(&[0, 2, 1]).apply(0, &mul);
        (lhs, rhs)
    });
    // τ(m_0) m_1 = m
    report.check("tau-inverts-counit", basis_tuples(&[d]), |x| {
        let t = Tensor::basis(&[d], x);
        (t.apply(0, &rho_r).apply(0, &tm).apply(0, &act), t)
    });
    // τ(mh) = m ε(h) for m coinvariant
    report.check("tau-mh-coinvariant", basis_tuples(&[sub.dim(), n]), |x| {
        let v = Tensor::from_vector(&sub.vector(x[0]));
        let t = v.tensor(&h.basis(&x[1..]));
        (t.apply(0, &act).apply(0, &tm), t.apply(1, &counit))
    });
    let simple = report.get("tau-mh-coinvariant").is_some_and(|e| e.passed());
    let pair = ["tau-mh", "tau-left-colinear"].iter().all(|a| report.get(a).is_some_and(|e| e.passed()));
    let inv = report.get("tau-inverts-counit").is_some_and(|e| e.passed());
    report.condition(
        "tau-routes-agree",
        !inv || simple == pair,
        format!("coinvariant form {simple}, general form {pair}"),
    );
    report
}

/// Computes `τ` from a preantipode and verifies every identity it must
/// satisfy, including that `ψ` and `ε_M` are mutually inverse.
pub fn compute_tau(h: &DualQuasiBialgebra, s: &Preantipode, m: &HopfBicomodule) -> Result<TauMap, PreantipodeError> {
    endo_shape(h, "S", &s.s).map_err(PreantipodeError::Shape)?;
    let (n, d) = (h.dim, m.dim);
    let sub = coinvariants(h, m);
    let r = sub.dim();
    let raw = tau_candidate(h, &s.s, m);
    let mut report = check_tau(h, m, &raw, &sub);
    if !report.passed() {
        return Err(PreantipodeError::TauFailed(report));
    }
    let columns: Vec<Vec<Scalar>> = (0..d)
        .map(|j| sub.coordinates(&raw.column(j)).expect("image checked to be coinvariant"))
        .collect();
    let tau = Matrix::from_columns(r, &columns);
    let tc = TensorMap::new(&tau, &[d], &[r]);
    let rho_r = m.right_map(h);
    let psi = matrix_of(&[d], &[r, n], |x| Tensor::basis(&[d], x).apply(0, &rho_r).apply(0, &tc));
    let eps = counit_epsilon_on(h, m, sub.clone()).matrix;
    report.condition("psi-after-epsilon", psi.mul(&eps).is_identity(), "psi ε_M is not the identity");
    report.condition("epsilon-after-psi", eps.mul(&psi).is_identity(), "ε_M psi is not the identity");
    if !report.passed() {
        return Err(PreantipodeError::TauFailed(report));
    }
    Ok(TauMap { coinvariants: sub, raw, tau, psi, report })
}

/// The mutually inverse pair `(ε_M, ψ_M)`.
pub fn structure_isomorphism(
    h: &DualQuasiBialgebra,
    s: &Preantipode,
    m: &HopfBicomodule,
) -> Result<(Matrix, Matrix), PreantipodeError> {
    let tau = compute_tau(h, s, m)?;
    let eps = counit_epsilon_on(h, m, tau.coinvariants).matrix;
    Ok((eps, tau.psi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BulacuComparison {
    /// `τ(m) = ω(m_{-1} ⊗ s(m_1) ⊗ m_3) P_M(m_0) α(m_2)` on every basis element.
    pub report: Report,
    /// Whether `γ_M(m) = P_M(m_0) ⊗ m_1` coincides with `ψ`.
    pub gamma_equals_psi: bool,
    /// `P_M` as a `d × d` matrix.
    pub projection: Matrix,
}

/// Compares `τ` (built from `S = β ∗ s ∗ α`) with the projection
/// `P_M(m) = m_0 β(m_1) s(m_2)`.
pub fn bulacu_compare(
    h: &DualQuasiBialgebra,
    data: &AntipodeData,
    m: &HopfBicomodule,
) -> Result<BulacuComparison, PreantipodeError> {
    let s_pre = preantipode_from_antipode(h, data)?;
    let d = m.dim;
    let (s, alpha, beta) = (h.endo_map(&data.s), h.functional_map(&data.alpha, 1), h.functional_map(&data.beta, 1));
    let (rho_l, rho_r, act, delta) = (m.left_map(h), m.right_map(h), m.act_map(h), h.delta_map());
    let projection = matrix_of(&[d], &[d], |x| {
        Tensor::basis(&[d], x)
            .apply(0, &rho_r)
            .apply(1, &delta)
            .apply(1, &beta)
            .apply(1, &s)
            .apply(0, &act)
    });
    let pm = TensorMap::new(&projection, &[d], &[d]);
    let tau = tau_candidate(h, &s_pre.s, m);
    let tm = TensorMap::new(&tau, &[d], &[d]);
    let mut report = Report::new();
    report.check("tau-via-projection", basis_tuples(&[d]), |x| {
        let t = Tensor::basis(&[d], x);
        let rhs = t
            .apply(0, &rho_r)
            .apply(1, &delta)
            .apply(1, &delta) // m_0 m_1 m_2 m_3
            .apply(0, &rho_l) // m_{-1} m_0 m_1 m_2 m_3
            .apply(3, &alpha)
            .apply(2, &s)
            .permute(&[0, 2, 3, 1])
            .apply(0, &h.omega_map())
            .apply(0, &pm);
        (t.apply(0, &tm), rhs)
    });
    let gamma_equals_psi = basis_tuples(&[d]).all(|x| {
        let t = Tensor::basis(&[d], &x).apply(0, &rho_r);
        t.apply(0, &pm) == t.apply(0, &tm)
    });
    Ok(BulacuComparison { report, gamma_equals_psi, projection })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiHomomorphismDefect {
    pub report: Report,
    /// `(g, ω(g, g⁻¹, g)⁻¹)` for every basis group element.
    pub scalars: Vec<(usize, Scalar)>,
}

impl AntiHomomorphismDefect {
    /// Elements at which `S` fails to be a coalgebra antimorphism.
    pub fn nontrivial(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.scalars.iter().filter(|(_, c)| !c.is_one())
    }
}

/// Checks `S(g_2) ⊗ S(g_1) = ω(g, g⁻¹, g)⁻¹ Δ S(g)` on a group algebra.
pub fn anti_homomorphism_defect(h: &DualQuasiBialgebra, s: &Matrix) -> Result<AntiHomomorphismDefect, PreantipodeError> {
    endo_shape(h, "S", s).map_err(PreantipodeError::Shape)?;
    if !h.has_grouplike_basis() {
        return Err(PreantipodeError::NotGroupAlgebra("basis is not grouplike".into()));
    }
    let n = h.dim;
    let unit = h.unit_basis_index().ok_or_else(|| PreantipodeError::NotGroupAlgebra("unit is not a basis element".into()))?;
    let mut scalars = Vec::with_capacity(n);
    for g in 0..n {
        let inverse = (0..n)
            .find(|&k| h.mul.column(g * n + k) == h.basis(&[unit]).to_dense())
            .ok_or_else(|| PreantipodeError::NotGroupAlgebra(format!("basis element {g} has no inverse")))?;
        let w = h.omega[(0, (g * n + inverse) * n + g)].clone();
        let c = w.inv().ok_or_else(|| PreantipodeError::NotGroupAlgebra("reassociator vanishes".into()))?;
        scalars.push((g, c));
    }
    let (sm, delta) = (h.endo_map(s), h.delta_map());
    let mut report = Report::new();
    report.check("anti-homomorphism-defect", basis1(h), |x| {
        let t = h.basis(x);
        let lhs = t.apply(0, &delta).apply(0, &sm).apply(1, &sm).permute(&[1, 0]);
        let rhs = t.apply(0, &sm).apply(0, &delta).scale(&scalars[x[0]].1);
        (lhs, rhs)
    });
    Ok(AntiHomomorphismDefect { report, scalars })
}
