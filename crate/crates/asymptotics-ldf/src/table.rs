use kernel_fredholm::DensityPair;
use rayon::prelude::*;

use crate::error::Result;
use crate::legendre::RateFunctions;
use crate::mu::MuMethod;
use crate::special::LdfScalar;

/// A point in the scaled variables: `xi = -x/sqrt(4t)`, the conjugate
/// `lambda` of `N`, the scaled height `q_height` and the conjugate `s_tracer` of `X_t`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScaledPoint<T> {
    pub xi: T,
    pub lambda: T,
    pub q_height: T,
    pub s_tracer: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LdfRow<T> {
    pub point: ScaledPoint<T>,
    pub value: T,
    /// Optimiser argument, where one applies.
    pub arg: Option<T>,
    /// Series terms used, zero when extrapolated.
    pub terms: usize,
    pub method: MuMethod,
    pub low_confidence: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LdfTable<T> {
    pub quantity: &'static str,
    pub rows: Vec<LdfRow<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Mu,
    PhiHeight,
    PhiTracer,
    C,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Mu => "mu",
            Quantity::PhiHeight => "Phi",
            Quantity::PhiTracer => "phi",
            Quantity::C => "C",
        }
    }
}

/// Evaluates `quantity` at every point, in parallel.
pub fn ldf_table<T: LdfScalar>(d: DensityPair<T>, quantity: Quantity, points: &[ScaledPoint<T>]) -> Result<LdfTable<T>> {
    let rf = RateFunctions::new(d);
    let rows = points
        .par_iter()
        .map(|p| -> Result<LdfRow<T>> {
            Ok(match quantity {
                Quantity::Mu => {
                    let m = rf.mu.mu(p.xi, p.lambda)?;
                    LdfRow { point: *p, value: m.value, arg: None, terms: m.terms, method: m.method, low_confidence: m.low_confidence }
                }
                Quantity::PhiHeight | Quantity::PhiTracer => {
                    let q = if quantity == Quantity::PhiHeight { p.q_height } else { T::zero() };
                    let v = rf.phi_height(p.xi, q)?;
                    LdfRow { point: *p, value: v.value, arg: Some(v.arg), terms: 0, method: v.method, low_confidence: v.low_confidence }
                }
                Quantity::C => {
                    let v = rf.c_of_s(p.s_tracer)?;
                    LdfRow { point: *p, value: v.value, arg: Some(v.arg), terms: 0, method: v.method, low_confidence: v.low_confidence }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LdfTable { quantity: quantity.name(), rows })
}
