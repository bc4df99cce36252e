use std::fmt;

/// The base field: either ℚ or the cyclotomic extension ℚ(ζ) with ζ a
/// primitive `order`-th root of unity.
///
/// `Cyclotomic { order: 1 }` and `Rationals` describe the same field and
/// compare equal.
#[derive(Clone, Copy, Debug)]
pub enum FieldSpec {
    Rationals,
    Cyclotomic { order: u32 },
}

impl FieldSpec {
    pub fn cyclotomic(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        if order == 1 {
            FieldSpec::Rationals
        } else {
            FieldSpec::Cyclotomic { order }
        }
    }

    /// Order of the distinguished root of unity (1 for ℚ).
    pub fn order(&self) -> u32 {
        match *self {
            FieldSpec::Rationals => 1,
            FieldSpec::Cyclotomic { order } => order,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.order() == 1
    }

    /// Degree of the field over ℚ, i.e. Euler's totient of the order.
    pub fn degree(&self) -> usize {
        totient(self.order()) as usize
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order()
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Cyclotomic { order } => write!(f, "Q(zeta_{order})"),
        }
    }
}

pub(crate) fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}
