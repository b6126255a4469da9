use std::fmt;

use super::field::{Fe, GaloisField};
use super::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u64),
}

/// An element bundled with its field, for call sites that want mismatches
/// reported instead of silently mixing presentations.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: GaloisField,
    value: Fe,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value.0, self.field.descriptor())
    }
}

impl FieldElement {
    pub fn new(field: &GaloisField, value: Fe) -> Self {
        assert!(field.contains(value), "index {} outside field of order {}", value.0, field.order());
        FieldElement { field: field.clone(), value }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    /// Coefficients over the ground field, constant term first.
    pub fn coeffs(&self) -> Vec<Fe> {
        self.field.coeffs(self.value)
    }

    /// Applies `op`; binary operations read `rhs`, unary ones ignore it.
    pub fn arith(&self, op: ArithOp, rhs: Option<&FieldElement>) -> Result<FieldElement, FieldError> {
        let f = &self.field;
        let other = || -> Result<Fe, FieldError> {
            let r = rhs.ok_or(FieldError::MissingOperand)?;
            if r.field != self.field {
                return Err(FieldError::FieldMismatch);
            }
            Ok(r.value)
        };
        let a = self.value;
        let v = match op {
            ArithOp::Add => f.add(a, other()?),
            ArithOp::Sub => f.sub(a, other()?),
            ArithOp::Mul => f.mul(a, other()?),
            ArithOp::Div => f.div(a, other()?)?,
            ArithOp::Neg => f.neg(a),
            ArithOp::Inv => f.inv(a)?,
            ArithOp::Pow(e) => f.pow(a, e),
        };
        Ok(FieldElement { field: f.clone(), value: v })
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(ArithOp::Add, Some(rhs))
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(ArithOp::Sub, Some(rhs))
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(ArithOp::Mul, Some(rhs))
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(ArithOp::Div, Some(rhs))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.arith(ArithOp::Inv, None)
    }

    pub fn quad_char(&self) -> i8 {
        self.field.quad_char(self.value)
    }

    pub fn order(&self) -> Result<u64, FieldError> {
        self.field.element_order(self.value)
    }
}
