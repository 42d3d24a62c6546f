//! Exact scalars and linear algebra.
//!
//! Two scalar types implement [`Scalar`]: [`Rational`] (arbitrary precision)
//! and [`CycNum`], an element of the cyclotomic field `Q(ξ_l)` stored in the
//! power basis of `Q[x]/Φ_l(x)`. Matrices are dense; row reduction is sparse.

mod cyclotomic;
mod echelon;
mod matrix;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, root_of_unity, CycField, CycNum};
pub use echelon::{express_in_span, Echelon, SparseVec};
pub use matrix::{commutant_basis, ExactMatrix, Matrix};
pub use rational::Rational;

use core::fmt::Debug;

/// Field operations shared by [`Rational`] and [`CycNum`].
///
/// Constants are produced from an existing element (`zero_like`) because a
/// cyclotomic zero has to know its order.
pub trait Scalar: Clone + PartialEq + Eq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// Which field operation [`field_op`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary operation on cyclotomic numbers.
pub fn field_op(a: &CycNum, b: &CycNum, kind: FieldOp) -> crate::Result<CycNum> {
    match kind {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
    }
}

/// Result of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<F> {
    /// A particular solution (free variables set to zero) and the dimension
    /// of the solution space of the homogeneous system.
    Solved {
        particular: alloc::vec::Vec<F>,
        nullity: usize,
    },
    NoSolution,
}
