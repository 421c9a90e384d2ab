//! The scalar interface shared by exact matrices.

use std::fmt::Debug;

use crate::cyclo::CycNum;
use crate::error::Result;

pub trait Field: Clone + PartialEq + Debug {
    /// Data needed to build constants (the cyclotomic order, for instance).
    type Ctx: Copy + PartialEq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: Self::Ctx) -> Self;
    fn one_in(ctx: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// The star involution used by `adjoint`.
    fn conj(&self) -> Self;
}

impl Field for CycNum {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.order()
    }
    fn zero_in(ctx: u32) -> Self {
        CycNum::zero(ctx)
    }
    fn one_in(ctx: u32) -> Self {
        CycNum::one(ctx)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        CycNum::inv(self)
    }
    fn conj(&self) -> Self {
        CycNum::conj(self)
    }
}
