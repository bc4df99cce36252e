//! Dual quasi-bialgebras given by structure constants, the convolution
//! algebra of functionals on their tensor powers, and the axiom verifier.

use crate::exactmath::{basis_tuples, solve_affine, FieldSpec, Matrix, Scalar, Tensor, TensorMap};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DqbError {
    #[error("malformed structure constants: {0}")]
    Shape(String),
    #[error("the reassociator is not convolution invertible")]
    OmegaNotInvertible,
    #[error("functionals live on different tensor powers ({left} and {right} columns)")]
    ArityMismatch { left: usize, right: usize },
    #[error("a functional on a tensor power of H must be a single row of length n^k, got {rows}x{cols}")]
    NotAFunctional { rows: usize, cols: usize },
    #[error("not convolution invertible")]
    NotInvertible,
}

/// Structure constants of `(H, m, u, Δ, ε, ω, ω⁻¹)` on a fixed basis
/// `e_0, …, e_{n-1}`.
///
/// Matrix shapes follow the column-is-image convention: `delta` is `n² × n`,
/// `counit` is `1 × n`, `mul` is `n × n²`, `unit` is `n × 1` (the vector
/// `1_H`), `omega` and `omega_inv` are `1 × n³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualQuasiBialgebra {
    pub field: FieldSpec,
    pub dim: usize,
    pub delta: Matrix,
    pub counit: Matrix,
    pub mul: Matrix,
    pub unit: Matrix,
    pub omega: Matrix,
    pub omega_inv: Matrix,
}

impl DualQuasiBialgebra {
    /// Assembles the structure, computing `ω⁻¹` by convolution inversion when
    /// it is not supplied. Only shapes are checked here; the axioms are
    /// checked by [`validate_dqb`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: FieldSpec,
        dim: usize,
        delta: Matrix,
        counit: Matrix,
        mul: Matrix,
        unit: Matrix,
        omega: Matrix,
        omega_inv: Option<Matrix>,
    ) -> Result<Self, DqbError> {
        let placeholder = Matrix::zeros(1, dim.pow(3));
        let mut h = DualQuasiBialgebra { field, dim, delta, counit, mul, unit, omega, omega_inv: placeholder };
        let given = omega_inv.is_some();
        if let Some(inv) = omega_inv {
            h.omega_inv = inv;
        }
        if let Some(problem) = h.shape_problems().into_iter().next() {
            return Err(DqbError::Shape(problem));
        }
        if !given {
            h.omega_inv = convolution_inverse(&h, &h.omega).map_err(|_| DqbError::OmegaNotInvertible)?;
        }
        Ok(h)
    }

    pub fn shape_problems(&self) -> Vec<String> {
        let n = self.dim;
        let expect = [
            ("delta", &self.delta, (n * n, n)),
            ("counit", &self.counit, (1, n)),
            ("mul", &self.mul, (n, n * n)),
            ("unit", &self.unit, (n, 1)),
            ("omega", &self.omega, (1, n * n * n)),
            ("omega_inv", &self.omega_inv, (1, n * n * n)),
        ];
        let mut problems = Vec::new();
        if n == 0 {
            problems.push("dimension must be positive".to_string());
        }
        for (name, m, shape) in expect {
            if m.shape() != shape {
                problems.push(format!("{name} is {}x{}, expected {}x{}", m.rows(), m.cols(), shape.0, shape.1));
            }
        }
        problems
    }

    pub fn delta_map(&self) -> TensorMap<'_> {
        TensorMap::new(&self.delta, &[self.dim], &[self.dim, self.dim])
    }

    pub fn counit_map(&self) -> TensorMap<'_> {
        TensorMap::new(&self.counit, &[self.dim], &[])
    }

    pub fn mul_map(&self) -> TensorMap<'_> {
        TensorMap::new(&self.mul, &[self.dim, self.dim], &[self.dim])
    }

    pub fn unit_map(&self) -> TensorMap<'_> {
        TensorMap::new(&self.unit, &[], &[self.dim])
    }

    pub fn omega_map(&self) -> TensorMap<'_> {
        TensorMap::new(&self.omega, &[self.dim; 3], &[])
    }

    pub fn omega_inv_map(&self) -> TensorMap<'_> {
        TensorMap::new(&self.omega_inv, &[self.dim; 3], &[])
    }

    /// A functional on `H^{⊗k}` as a tensor map.
    pub fn functional_map<'a>(&self, f: &'a Matrix, k: usize) -> TensorMap<'a> {
        TensorMap::new(f, &vec![self.dim; k], &[])
    }

    /// A linear endomorphism of `H` as a tensor map.
    pub fn endo_map<'a>(&self, f: &'a Matrix) -> TensorMap<'a> {
        TensorMap::new(f, &[self.dim], &[self.dim])
    }

    /// `e_{i_0} ⊗ … ⊗ e_{i_{k-1}}`.
    pub fn basis(&self, indices: &[usize]) -> Tensor {
        Tensor::basis(&vec![self.dim; indices.len()], indices)
    }

    /// `1_H` as a coordinate vector.
    pub fn unit_vector(&self) -> Vec<Scalar> {
        self.unit.column(0)
    }

    /// Index `u` with `1_H = e_u`, when the unit is a basis vector.
    pub fn unit_basis_index(&self) -> Option<usize> {
        let v = self.unit_vector();
        let nonzero: Vec<usize> = (0..self.dim).filter(|&i| !v[i].is_zero()).collect();
        match nonzero.as_slice() {
            [u] if v[*u].is_one() => Some(*u),
            _ => None,
        }
    }

    /// Whether `e_i` is grouplike: `Δ e_i = e_i ⊗ e_i` and `ε(e_i) = 1`.
    pub fn is_grouplike(&self, i: usize) -> bool {
        let n = self.dim;
        self.counit[(0, i)].is_one()
            && (0..n * n).all(|r| {
                let v = &self.delta[(r, i)];
                if r == i * n + i {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
    }

    pub fn has_grouplike_basis(&self) -> bool {
        (0..self.dim).all(|i| self.is_grouplike(i))
    }

    /// `ε^{⊗k}` as a `1 × n^k` functional.
    pub fn counit_power(&self, k: usize) -> Matrix {
        let n = self.dim;
        let values = basis_tuples(&vec![n; k])
            .map(|t| t.iter().fold(Scalar::one(), |acc, &i| acc * &self.counit[(0, i)]))
            .collect();
        Matrix::row_vector(values)
    }

    /// Applies `Δ` to each of the first `k` factors `legs - 1` times and
    /// regroups so that the result reads `x_(1) ⊗ x_(2) ⊗ … ⊗ x_(legs)`, each
    /// block being `k` factors wide; the codiagonal comultiplication of
    /// `H^{⊗k}` iterated. Factors after the first `k` are kept at the end.
    pub fn split(&self, t: &Tensor, k: usize, legs: usize) -> Tensor {
        assert!(legs >= 1);
        let delta = self.delta_map();
        let mut out = t.clone();
        for i in (0..k).rev() {
            for j in 0..legs - 1 {
                out = out.apply(i + j, &delta);
            }
        }
        let rest = out.dims().len() - k * legs;
        let mut order: Vec<usize> = (0..legs).flat_map(|leg| (0..k).map(move |i| i * legs + leg)).collect();
        order.extend(k * legs..k * legs + rest);
        out.permute(&order)
    }
}

fn functional_arity(h: &DualQuasiBialgebra, f: &Matrix) -> Result<usize, DqbError> {
    let bad = DqbError::NotAFunctional { rows: f.rows(), cols: f.cols() };
    if f.rows() != 1 || h.dim == 0 || (h.dim == 1 && f.cols() != 1) {
        return Err(bad);
    }
    let mut k = 0;
    let mut size = 1;
    while size < f.cols() {
        size *= h.dim;
        k += 1;
    }
    if size == f.cols() {
        Ok(k)
    } else {
        Err(bad)
    }
}

/// `(f ∗ g)(x) = f(x_1) g(x_2)` for functionals on the same tensor power.
pub fn convolution(h: &DualQuasiBialgebra, f: &Matrix, g: &Matrix) -> Result<Matrix, DqbError> {
    let k = functional_arity(h, f)?;
    let kg = functional_arity(h, g)?;
    if k != kg {
        return Err(DqbError::ArityMismatch { left: f.cols(), right: g.cols() });
    }
    let fm = h.functional_map(f, k);
    let gm = h.functional_map(g, k);
    let values = basis_tuples(&vec![h.dim; k])
        .map(|x| h.split(&h.basis(&x), k, 2).apply(0, &fm).apply(0, &gm).as_scalar())
        .collect();
    Ok(Matrix::row_vector(values))
}

/// Two-sided convolution inverse, found by solving `f ∗ g = ε^{⊗k}` and
/// confirming `g ∗ f = ε^{⊗k}`.
pub fn convolution_inverse(h: &DualQuasiBialgebra, f: &Matrix) -> Result<Matrix, DqbError> {
    let k = functional_arity(h, f)?;
    let n = h.dim;
    let size = f.cols();
    let fm = h.functional_map(f, k);
    let mut system = Matrix::zeros(size, size);
    for (row, x) in basis_tuples(&vec![n; k]).enumerate() {
        let rest = h.split(&h.basis(&x), k, 2).apply(0, &fm);
        for (col, c) in rest.to_dense().into_iter().enumerate() {
            system[(row, col)] = c;
        }
    }
    let unit = h.counit_power(k);
    let rhs = unit.row(0).to_vec();
    let solution = solve_affine(&system, &rhs).expect("square system").ok_or(DqbError::NotInvertible)?;
    let g = Matrix::row_vector(solution.particular);
    if convolution(h, &g, f)? != unit || convolution(h, f, &g)? != unit {
        return Err(DqbError::NotInvertible);
    }
    Ok(g)
}

/// Checks every defining axiom of a dual quasi-bialgebra by expanding both
/// sides on all basis tuples. Entries appear in a fixed order: coalgebra,
/// coalgebra-map conditions, invertibility of `ω`, cocycle conditions,
/// quasi-associativity, unit laws.
pub fn validate_dqb(h: &DualQuasiBialgebra) -> Report {
    let mut report = Report::new();
    let problems = h.shape_problems();
    if !problems.is_empty() {
        report.malformed("shape", problems.join("; "));
        return report;
    }
    let n = h.dim;
    let delta = h.delta_map();
    let counit = h.counit_map();
    let mul = h.mul_map();
    let unit = h.unit_map();
    let omega = h.omega_map();
    let omega_inv = h.omega_inv_map();
    let singles = || basis_tuples(&[n]).collect::<Vec<_>>();
    let pairs = || basis_tuples(&[n, n]).collect::<Vec<_>>();
    let triples = || basis_tuples(&[n, n, n]).collect::<Vec<_>>();
    let one = || Tensor::scalar(Scalar::one());

    // (H, Δ, ε) is a coassociative counital coalgebra
    report.check("coassociativity", singles(), |x| {
        let d = h.basis(x).apply(0, &delta);
        (d.apply(0, &delta), d.apply(1, &delta))
    });
    report.check("counit-left", singles(), |x| (h.basis(x).apply(0, &delta).apply(0, &counit), h.basis(x)));
    report.check("counit-right", singles(), |x| (h.basis(x).apply(0, &delta).apply(1, &counit), h.basis(x)));

    // m and u are coalgebra maps
    report.check("comultiplication-multiplicative", pairs(), |x| {
        let lhs = h.basis(x).apply(0, &mul).apply(0, &delta);
        let rhs = h.split(&h.basis(x), 2, 2).apply(0, &mul).apply(1, &mul);
        (lhs, rhs)
    });
    report.check("counit-multiplicative", pairs(), |x| {
        (h.basis(x).apply(0, &mul).apply(0, &counit), h.basis(x).apply(0, &counit).apply(0, &counit))
    });
    report.check("comultiplication-unit", vec![vec![]], |_| {
        let u = one().apply(0, &unit);
        (u.apply(0, &delta), u.apply(0, &unit))
    });
    report.check("counit-unit", vec![vec![]], |_| (one().apply(0, &unit).apply(0, &counit), one()));

    // ω is convolution invertible with the given inverse
    let eps3 = |x: &[usize]| h.basis(x).apply(0, &counit).apply(0, &counit).apply(0, &counit);
    report.check("omega-inverse-right", triples(), |x| {
        (h.split(&h.basis(x), 3, 2).apply(0, &omega).apply(0, &omega_inv), eps3(x))
    });
    report.check("omega-inverse-left", triples(), |x| {
        (h.split(&h.basis(x), 3, 2).apply(0, &omega_inv).apply(0, &omega), eps3(x))
    });

    // ω(H⊗H⊗m) ∗ ω(m⊗H⊗H) = (ε⊗ω) ∗ ω(H⊗m⊗H) ∗ (ω⊗ε)
    report.check("omega-3-cocycle", basis_tuples(&[n; 4]), |x| {
        let lhs = h
            .split(&h.basis(x), 4, 2)
            .apply(2, &mul)
            .apply(0, &omega)
            .apply(0, &mul)
            .apply(0, &omega);
        let rhs = h
            .split(&h.basis(x), 4, 3)
            .apply(0, &counit)
            .apply(0, &omega)
            .apply(1, &mul)
            .apply(0, &omega)
            .apply(0, &omega)
            .apply(0, &counit);
        (lhs, rhs)
    });

    // ω(h⊗k⊗l) = ε(h)ε(k)ε(l) whenever 1_H ∈ {h, k, l}
    match h.unit_basis_index() {
        Some(u) => {
            let cases = triples().into_iter().filter(|t| t.contains(&u)).collect::<Vec<_>>();
            report.check("omega-unital", cases, |x| (h.basis(x).apply(0, &omega), eps3(x)));
        }
        None => {
            // 1_H is not a basis vector: substitute it into each slot in turn;
            // the witness lists the slot followed by the two basis indices.
            let cases = (0..3).flat_map(|slot| pairs().into_iter().map(move |p| [vec![slot], p].concat()));
            report.check("omega-unital", cases, |c| {
                let (slot, rest) = (c[0], &c[1..]);
                let t = h.basis(rest).apply(slot, &unit);
                let ones = t.apply(0, &counit).apply(0, &counit).apply(0, &counit);
                (t.apply(0, &omega), ones)
            });
        }
    }

    // m(H⊗m) ∗ ω = ω ∗ m(m⊗H)
    report.check("quasi-associativity", triples(), |x| {
        let split = h.split(&h.basis(x), 3, 2);
        let lhs = split.apply(1, &mul).apply(0, &mul).apply(1, &omega);
        let rhs = split.apply(0, &omega).apply(0, &mul).apply(0, &mul);
        (lhs, rhs)
    });

    report.check("unit-left", singles(), |x| (h.basis(x).apply(0, &unit).apply(0, &mul), h.basis(x)));
    report.check("unit-right", singles(), |x| (h.basis(x).apply(1, &unit).apply(0, &mul), h.basis(x)));
    report
}
