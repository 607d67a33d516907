//! Which `θ_{π_c⊗π_λ}` extend completely boundedly to `A(K_q, w_β)`.
//!
//! The decision depends on `λ` alone: the `π_c` factor contributes a
//! unitary, so no `π_c` argument appears anywhere in this module. With
//! `t = log β / log q⁻¹`, `λ` extends iff `|λ| ≤ t`, i.e.
//! `(λ,λ) ≤ t²`, the boundary being included.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::qnorm::SessionConfig;
use crate::real::{self, Precision, Real};
use crate::root_system::RootSystem;
use crate::weight::{dominant_weights_up_to, Weight};

/// Relative width of the band around `(λ,λ) = t²` that is flagged as a
/// boundary case.
pub const BOUNDARY_GUARD: f64 = 1e-30;

/// `β ≥ 1` together with `log β` at working precision.
#[derive(Clone, Debug)]
pub struct Beta {
    value: f64,
    ln: Real,
}

impl Beta {
    pub fn new(beta: f64, precision: Precision) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::InvalidBeta(beta, "must be finite"));
        }
        if beta < 1.0 {
            return Err(Error::InvalidBeta(beta, "central weights need beta >= 1"));
        }
        Ok(Beta {
            value: beta,
            ln: precision.ln_f64(beta),
        })
    }

    /// Builds `β = e^{ln}` without rounding `β` itself to a double.
    pub fn from_ln(ln: Real) -> Result<Self> {
        if ln < Real::ZERO {
            return Err(Error::InvalidBeta(
                real::to_f64(&ln.clone().exp()),
                "central weights need beta >= 1",
            ));
        }
        let value = real::to_f64(&ln.clone().exp());
        Ok(Beta { value, ln })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn ln(&self) -> &Real {
        &self.ln
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// `q^{−(λ,μ)} ≤ q^{−|λ||μ|} ≤ β^{|μ|}`, so the ratio is at most 1,
    /// attained at `μ = 0`.
    Bounded { sup: Real, attained_at: Weight },
    /// Along `μ_m = m·ray` the ratio is `growth_factor^m` with
    /// `growth_factor = e^{(λ,λ) log q⁻¹ − |λ| log β} > 1`.
    DivergenceRay { ray: Weight, growth_factor: Real },
}

#[derive(Clone, Debug)]
pub struct CbDecision {
    pub lambda: Weight,
    pub beta: f64,
    pub q: f64,
    pub extends: bool,
    /// `(λ,λ)` is within the guard band of `t²`.
    pub boundary: bool,
    pub norm_sq: Rational,
    /// `t = log β / log q⁻¹`.
    pub threshold: Real,
    /// Smallest β for which λ extends: `q^{−|λ|}`.
    pub beta_min: Real,
    pub certificate: Certificate,
}

fn guard(p: Precision) -> Real {
    let g = p.from_f64(BOUNDARY_GUARD);
    let floor = p.from_int(1000) * p.epsilon();
    if floor > g {
        floor
    } else {
        g
    }
}

pub fn cb_extends(
    rs: &RootSystem,
    cfg: &SessionConfig,
    beta: &Beta,
    lambda: &Weight,
) -> Result<CbDecision> {
    rs.check_dominant(lambda)?;
    let p = cfg.precision();
    let ln_q_inv = cfg.ln_q_inv();
    let t = beta.ln().clone() / ln_q_inv.clone();
    let t_sq = t.clone() * t.clone();
    let norm_sq = rs.norm_sq(lambda)?;
    let ns = p.from_rational(&norm_sq);
    let diff = ns.clone() - t_sq.clone();
    let scale = if ns > t_sq { ns.clone() } else { t_sq.clone() };
    let scale = if scale < p.from_int(1) {
        p.from_int(1)
    } else {
        scale
    };
    let boundary = real::abs(&diff) <= guard(p) * scale;
    let extends = boundary || diff < Real::ZERO;

    let length = p.sqrt_rational(&norm_sq);
    let beta_min = (length.clone() * ln_q_inv.clone()).exp();
    let certificate = if extends {
        Certificate::Bounded {
            sup: p.from_int(1),
            attained_at: Weight::zero(rs.rank()),
        }
    } else {
        let log_growth = ns * ln_q_inv - length * beta.ln().clone();
        Certificate::DivergenceRay {
            ray: lambda.clone(),
            growth_factor: log_growth.exp(),
        }
    };
    Ok(CbDecision {
        lambda: lambda.clone(),
        beta: beta.value(),
        q: cfg.q(),
        extends,
        boundary,
        norm_sq,
        threshold: t,
        beta_min,
        certificate,
    })
}

/// Decisions for every dominant λ with coordinates ≤ `height`, ordered by
/// level and then lexicographically.
pub fn cb_region_enumerate(
    rs: &RootSystem,
    cfg: &SessionConfig,
    beta: &Beta,
    height: i64,
) -> Result<Vec<CbDecision>> {
    dominant_weights_up_to(rs.rank(), height)
        .par_iter()
        .map(|lambda| cb_extends(rs, cfg, beta, lambda))
        .collect()
}

#[derive(Clone, Debug)]
pub struct RayPoint {
    pub m: i64,
    pub mu: Weight,
    pub log_ratio: Real,
}

/// Empirical values of `r(μ) = (λ,μ) log q⁻¹ − |μ| log β`, the logarithm of
/// `‖v^μ‖ / w_β(μ)`.
#[derive(Clone, Debug)]
pub struct RatioScan {
    pub lambda: Weight,
    pub height: i64,
    pub max_log_ratio: Real,
    pub argmax: Weight,
    /// `r` restricted to `μ = mλ`, for all `m` with `mλ` inside the height.
    pub ray: Vec<RayPoint>,
    /// `max r ≤ 0` up to the boundary guard.
    pub bounded: bool,
    pub ray_strictly_increasing: bool,
}

impl RatioScan {
    /// Bounded scans must come with extending decisions; growing rays with
    /// non-extending ones.
    pub fn consistent_with(&self, decision: &CbDecision) -> bool {
        if decision.extends {
            self.bounded
        } else {
            self.ray_strictly_increasing && self.ray.len() >= 2 && !self.bounded
        }
    }
}

pub fn sup_ratio_scan(
    rs: &RootSystem,
    cfg: &SessionConfig,
    beta: &Beta,
    lambda: &Weight,
    height: i64,
) -> Result<RatioScan> {
    rs.check_dominant(lambda)?;
    let p = cfg.precision();
    let ln_q_inv = cfg.ln_q_inv();
    let log_ratio = |mu: &Weight| -> Result<Real> {
        let pairing = p.from_rational(&rs.inner_product(lambda, mu)?);
        let length = p.sqrt_rational(&rs.norm_sq(mu)?);
        Ok(pairing * ln_q_inv.clone() - length * beta.ln().clone())
    };

    let mut max_log_ratio = None::<Real>;
    let mut argmax = Weight::zero(rs.rank());
    for mu in dominant_weights_up_to(rs.rank(), height) {
        let r = log_ratio(&mu)?;
        if max_log_ratio.as_ref().is_none_or(|m| r > *m) {
            max_log_ratio = Some(r);
            argmax = mu;
        }
    }
    let max_log_ratio = max_log_ratio.expect("height >= 0 yields μ = 0");

    let mut ray = Vec::new();
    let step = lambda.max_coord();
    let steps = if step == 0 { 0 } else { height / step };
    for m in 0..=steps {
        let mu = lambda.scale(m);
        ray.push(RayPoint {
            m,
            log_ratio: log_ratio(&mu)?,
            mu,
        });
    }
    let ray_strictly_increasing =
        ray.len() >= 2 && ray.windows(2).all(|w| w[1].log_ratio > w[0].log_ratio);
    let bounded = max_log_ratio <= guard(p);
    Ok(RatioScan {
        lambda: lambda.clone(),
        height,
        max_log_ratio,
        argmax,
        ray,
        bounded,
        ray_strictly_increasing,
    })
}
