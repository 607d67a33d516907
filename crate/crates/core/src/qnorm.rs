//! Norms of `π_λ(l⁻(u^μ))` carried as exact exponents of `q`.
//!
//! The closed form is `q^{−(λ,μ)}`. The R-matrix route recomputes it from
//! the eigenvalues `q^{(μ,μ+2ρ)+(λ,λ+2ρ)−(ν,ν+2ρ)}` of `(π_μ⊗π_λ)(R₂₁R)^{−1}`
//! on the isotypic components `ν ⊆ μ⊗λ`; the operator norm of
//! `π_λ(l⁻(u^μ))` is the square root of the largest one.

use std::cmp::Ordering;
use std::fmt;

use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::fusion::tensor_decompose;
use crate::real::{Precision, Real};
use crate::root_system::RootSystem;
use crate::weight::Weight;

/// The quantity `q^e`, stored as its exact exponent `e`.
///
/// For `0 < q < 1` a larger exponent means a smaller value; use
/// [`QExponent::cmp_value`] for comparisons of the quantities themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QExponent(Rational);

impl QExponent {
    pub fn new(e: Rational) -> Self {
        QExponent(e)
    }

    pub fn exponent(&self) -> &Rational {
        &self.0
    }

    /// Orders the values `q^e` (reverse of the exponent order).
    pub fn cmp_value(&self, other: &QExponent) -> Ordering {
        other.0.cmp(&self.0)
    }

    pub fn double(&self) -> QExponent {
        QExponent(&self.0 * RBig::from(2))
    }

    pub fn half(&self) -> QExponent {
        QExponent(&self.0 / RBig::from(2))
    }

    /// `q^e` in high precision.
    pub fn eval(&self, cfg: &SessionConfig) -> Real {
        let p = cfg.precision();
        (p.from_rational(&self.0) * cfg.ln_q()).exp()
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        q.powf(self.0.to_f64().value())
    }
}

impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deformation parameter and working precision for a session.
#[derive(Clone, Debug)]
pub struct SessionConfig {
    q: f64,
    precision: Precision,
    ln_q: Real,
}

impl SessionConfig {
    pub fn new(q: f64, precision: Precision) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::QOutOfRange(q));
        }
        let ln_q = precision.ln_f64(q);
        Ok(SessionConfig { q, precision, ln_q })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// `log q` (negative).
    pub fn ln_q(&self) -> Real {
        self.ln_q.clone()
    }

    /// `log q⁻¹` (positive).
    pub fn ln_q_inv(&self) -> Real {
        -self.ln_q.clone()
    }
}

/// Closed form: `‖π_λ(l⁻(u^μ))‖ = q^{−(λ,μ)}`.
pub fn lminus_norm_exponent(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<QExponent> {
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    Ok(QExponent(-rs.inner_product(lambda, mu)?))
}

/// Norm of `π_λ(I(u^μ)) = π_λ(l⁻(u^μ) l⁻(u^μ)*)`, namely `q^{−2(λ,μ)}`.
pub fn i_norm_exponent(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<QExponent> {
    Ok(lminus_norm_exponent(rs, lambda, mu)?.double())
}

/// One isotypic component of `V(μ)⊗V(λ)` with its `(R₂₁R)^{−1}` exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicExponent {
    pub nu: Weight,
    pub multiplicity: u64,
    pub dimension: u128,
    /// `E(ν) = (μ,μ+2ρ) + (λ,λ+2ρ) − (ν,ν+2ρ)`.
    pub exponent: Rational,
}

#[derive(Clone, Debug)]
pub struct RMatrixSpectrum {
    pub lambda: Weight,
    pub mu: Weight,
    /// Components ordered by increasing exponent (decreasing eigenvalue).
    pub components: Vec<IsotypicExponent>,
    /// `min_ν E(ν) / 2`.
    pub sup_exponent: QExponent,
    /// All ν attaining the minimal exponent.
    pub minimizers: Vec<Weight>,
}

impl RMatrixSpectrum {
    pub fn minimizer_is_cartan_component(&self) -> bool {
        self.minimizers.len() == 1 && self.minimizers[0] == &self.lambda + &self.mu
    }
}

/// Enumerates `ν ⊆ μ⊗λ` and the exponents `E(ν)` of `(R₂₁R)^{−1}`.
pub fn rmatrix_spectrum(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<RMatrixSpectrum> {
    let fusion = tensor_decompose(rs, mu, lambda)?;
    let base = rs.casimir(mu)? + rs.casimir(lambda)?;
    let mut components = fusion
        .components()
        .iter()
        .map(|(nu, m)| {
            Ok(IsotypicExponent {
                nu: nu.clone(),
                multiplicity: *m,
                dimension: rs.weyl_dim(nu)?,
                exponent: &base - rs.casimir(nu)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    components.sort_by(|a, b| a.exponent.cmp(&b.exponent).then_with(|| b.nu.cmp(&a.nu)));
    let min = components[0].exponent.clone();
    let minimizers = components
        .iter()
        .filter(|c| c.exponent == min)
        .map(|c| c.nu.clone())
        .collect();
    Ok(RMatrixSpectrum {
        lambda: lambda.clone(),
        mu: mu.clone(),
        components,
        sup_exponent: QExponent(min).half(),
        minimizers,
    })
}

/// R-matrix route: half of the minimal isotypic exponent.
pub fn rmatrix_sup_exponent(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<QExponent> {
    Ok(rmatrix_spectrum(rs, lambda, mu)?.sup_exponent)
}
