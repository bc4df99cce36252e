use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{totient, FieldSpec};

/// An exact element of ℚ(ζ_order).
///
/// The coefficient vector has length φ(order) and holds the canonical
/// representative modulo the cyclotomic polynomial Φ_order. Elements that
/// happen to be rational are always stored with `order == 1`, so rational
/// arithmetic never pays for the extension.
#[derive(Clone, Debug)]
pub struct Scalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients of Φ_n, lowest degree first (monic, length φ(n) + 1).
pub fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(hit) = PHI_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return hit;
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let phi = Rc::new(num);
    PHI_CACHE.with(|c| c.borrow_mut().insert(n, phi.clone()));
    phi
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn normalized_order(order: u32) -> u32 {
    if totient(order) == 1 {
        1
    } else {
        order
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { order: 1, coeffs: vec![r] }
    }

    /// ζ_order^power in canonical form.
    pub fn root_of_unity(order: u32, power: i64) -> Self {
        assert!(order >= 1);
        let p = power.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); p + 1];
        poly[p] = BigRational::one();
        Self::reduce(order, poly)
    }

    /// Builds the element Σ coeffs[k] ζ^k of ℚ(ζ_order); `coeffs` may be of
    /// any length and is reduced.
    pub fn from_poly(order: u32, coeffs: Vec<BigRational>) -> Self {
        Self::reduce(order, coeffs)
    }

    fn reduce(order: u32, poly: Vec<BigRational>) -> Self {
        if totient(order) == 1 {
            return Self::reduce_small(order, poly);
        }
        let coeffs = Self::reduce_keep(order, poly);
        Self::demote(order, coeffs)
    }

    fn demote(order: u32, coeffs: Vec<BigRational>) -> Self {
        if order != 1 && coeffs.iter().skip(1).all(Zero::is_zero) {
            let c0 = coeffs.into_iter().next().unwrap_or_else(BigRational::zero);
            return Scalar { order: 1, coeffs: vec![c0] };
        }
        Scalar { order, coeffs }
    }

    // ℚ(ζ_1) = ℚ(ζ_2) = ℚ, with ζ_2 = -1.
    fn reduce_small(order: u32, poly: Vec<BigRational>) -> Self {
        let mut sum = BigRational::zero();
        for (k, c) in poly.into_iter().enumerate() {
            if order == 2 && k % 2 == 1 {
                sum -= c;
            } else {
                sum += c;
            }
        }
        Scalar { order: 1, coeffs: vec![sum] }
    }

    /// Order of the smallest cyclotomic field this representation lives in
    /// (1 when the value is rational).
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficient vector of the current representation.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    /// Returns the rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    /// Whether the element belongs to the given field.
    pub fn lies_in(&self, field: FieldSpec) -> bool {
        field.order().is_multiple_of(self.order)
    }

    /// Re-expresses the element in ℚ(ζ_target); `target` must be a multiple
    /// of the current order. The result is not demoted.
    pub fn lift_to(&self, target: u32) -> Vec<BigRational> {
        let target_n = normalized_order(target);
        assert!(
            target_n.is_multiple_of(self.order),
            "cannot lift an element of Q(zeta_{}) into Q(zeta_{})",
            self.order,
            target
        );
        if target_n == self.order {
            return self.coeffs.clone();
        }
        let step = (target_n / self.order) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::reduce_keep(target_n, poly)
    }

    fn reduce_keep(order: u32, poly: Vec<BigRational>) -> Vec<BigRational> {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        let mut poly = poly;
        if poly.len() < deg {
            poly.resize(deg, BigRational::zero());
        }
        for k in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    poly[k - deg + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
        poly.truncate(deg);
        poly
    }

    fn common(a: &Scalar, b: &Scalar) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        if a.order == b.order {
            return (a.order, a.coeffs.clone(), b.coeffs.clone());
        }
        let l = a.order.lcm(&b.order);
        (l, a.lift_to(l), b.lift_to(l))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Scalar::from_rational(self.coeffs[0].recip()));
        }
        // Solve (multiplication-by-self) x = 1 over ℚ.
        let deg = self.coeffs.len();
        let mut columns = Vec::with_capacity(deg);
        for j in 0..deg {
            let mut poly = vec![BigRational::zero(); j + deg];
            for (k, c) in self.coeffs.iter().enumerate() {
                poly[j + k] = c.clone();
            }
            columns.push(Self::reduce_keep(self.order, poly));
        }
        let mut rhs = vec![BigRational::zero(); deg];
        rhs[0] = BigRational::one();
        let x = solve_square_rational(&columns, rhs)?;
        Some(Self::demote(self.order, x))
    }

    pub fn pow(&self, exp: i64) -> Option<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    /// Canonical text in the syntax accepted by [`Scalar::parse`], written
    /// relative to ζ_order for a field of the given order.
    pub fn to_canonical_string(&self, field: FieldSpec) -> String {
        let order = normalized_order(field.order());
        let coeffs = if self.order == 1 {
            vec![self.coeffs[0].clone()]
        } else {
            self.lift_to(order)
        };
        format_poly(&coeffs)
    }
}

fn solve_square_rational(columns: &[Vec<BigRational>], rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    // augmented row-major copy
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = columns.iter().map(|col| col[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let (src, dst) = if r < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_poly(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let power = match k {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{k}"),
        };
        if k == 0 {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format_rational(&mag));
            out.push('*');
            out.push_str(&power);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.coeffs))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = Scalar::common(self, other);
        a == b
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.order == 1 && rhs.order == 1 {
            return Scalar::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let (order, mut a, b) = Scalar::common(self, rhs);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        Scalar::demote(order, a)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if self.order == 1 && rhs.order == 1 {
            return Scalar::from_rational(&self.coeffs[0] - &rhs.coeffs[0]);
        }
        let (order, mut a, b) = Scalar::common(self, rhs);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x -= y;
        }
        Scalar::demote(order, a)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.order == 1 && rhs.order == 1 {
            return Scalar::from_rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        if self.order == 1 || rhs.order == 1 {
            let (r, other) = if self.order == 1 { (&self.coeffs[0], rhs) } else { (&rhs.coeffs[0], self) };
            if r.is_zero() {
                return Scalar::zero();
            }
            let coeffs = other.coeffs.iter().map(|c| c * r).collect();
            return Scalar { order: other.order, coeffs };
        }
        let (order, a, b) = Scalar::common(self, rhs);
        let mut poly = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Scalar::reduce(order, poly)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar { (&self).$method(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar { (&self).$method(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar { self.$method(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.order == 1 && rhs.order == 1 {
            self.coeffs[0] += &rhs.coeffs[0];
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.order == 1 && rhs.order == 1 {
            self.coeffs[0] -= &rhs.coeffs[0];
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// ζ^power for the field's primitive root.
pub fn cyclotomic_root(field: FieldSpec, power: i64) -> Result<Scalar, NotCyclotomic> {
    match field {
        FieldSpec::Rationals => Err(NotCyclotomic),
        FieldSpec::Cyclotomic { order } => Ok(Scalar::root_of_unity(order, power)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("roots of unity require a cyclotomic field")]
pub struct NotCyclotomic;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        let c2 = FieldSpec::cyclotomic(2);
        let c4 = FieldSpec::cyclotomic(4);
        assert_eq!(cyclotomic_root(c2, 1).unwrap(), Scalar::from_int(-1));
        assert_eq!(cyclotomic_root(c4, 2).unwrap(), Scalar::from_int(-1));
        let w = cyclotomic_root(FieldSpec::cyclotomic(3), 1).unwrap();
        assert_eq!(w.pow(3).unwrap(), Scalar::one());
        assert_ne!(w, Scalar::one());
        assert!(cyclotomic_root(FieldSpec::Rationals, 1).is_err());
    }

    #[test]
    fn primitive_roots_sum_to_mobius() {
        // Σ over primitive 6th roots of unity = μ(6) = 1; over primitive 4th = 0
        let sum6 = [1, 5].iter().fold(Scalar::zero(), |acc, &k| acc + Scalar::root_of_unity(6, k));
        assert_eq!(sum6, Scalar::one());
        let sum4 = [1, 3].iter().fold(Scalar::zero(), |acc, &k| acc + Scalar::root_of_unity(4, k));
        assert!(sum4.is_zero());
    }

    #[test]
    fn rational_values_demote() {
        let i = Scalar::root_of_unity(4, 1);
        let minus_one = &i * &i;
        assert_eq!(minus_one.order(), 1);
        assert_eq!(minus_one.to_string(), "-1");
    }

    #[test]
    fn mixed_orders_compare_in_common_field() {
        let w3 = Scalar::root_of_unity(3, 1);
        let w6_sq = Scalar::root_of_unity(6, 2);
        assert_eq!(w3, w6_sq);
        let i = Scalar::root_of_unity(4, 1);
        let prod = &i * &w3;
        assert_eq!(prod, Scalar::root_of_unity(12, 7));
    }

    #[test]
    fn inverses() {
        let a = Scalar::root_of_unity(5, 2) + Scalar::from_ratio(1, 3);
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn display() {
        let x = Scalar::from_poly(
            8,
            vec![
                BigRational::from_integer((-1).into()),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::new(1.into(), 2.into()),
            ],
        );
        assert_eq!(x.to_string(), "1/2*z^3 - 1");
        assert_eq!(Scalar::root_of_unity(4, 3).to_string(), "-z");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
