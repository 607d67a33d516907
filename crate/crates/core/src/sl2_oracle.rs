//! Numeric `U_q(sl₂)` oracle for the norm of `(π_μ⊗π_λ)(R₂₁R)^{−1}`.
//!
//! `R = q^{H⊗H/2} Σ_k q^{k(k−1)/2} (q−q^{−1})^k / [k]_q! · E^k⊗F^k` acts on
//! `V(mϖ)⊗V(nϖ)` and `R₂₁` swaps the roles of `E` and `F`. `R` preserves the
//! total weight, so every matrix here is handled one weight sector at a time.
//! Eigenvalues of `(R₂₁R)^{−1}` span `q^{−2mn−2min(m,n)}` in ratio; the
//! working precision is raised to cover that range.

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::linalg::Matrix;
use crate::qnorm::{lminus_norm_exponent, rmatrix_spectrum, SessionConfig};
use crate::real::{self, Precision, Real};
use crate::root_system::RootSystem;
use crate::weight::Weight;

/// Bound on the generator relation residuals.
pub const RELATION_TOLERANCE: f64 = 1e-10;

/// Weight basis normalizations of `V(nϖ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `E e_j = [j] e_{j−1}`, `F e_j = [n−j] e_{j+1}`.
    Standard,
    /// Orthonormal for the `*`-structure `E* = KF`:
    /// `E e_j = q^{(n−2j)/2} ([j][n−j+1])^{1/2} e_{j−1}`,
    /// `F e_j = q^{−(n−2j−2)/2} ([j+1][n−j])^{1/2} e_{j+1}`.
    /// In this basis `R₂₁ = Rᵀ`, so `R₂₁R` is symmetric.
    Unitary,
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::QOutOfRange(q))
    }
}

struct QNumbers {
    p: Precision,
    q: Real,
    sqrt_q: Real,
}

impl QNumbers {
    fn new(q: f64, p: Precision) -> Self {
        let q = p.from_f64(q);
        let sqrt_q = q.clone().sqrt();
        QNumbers { p, q, sqrt_q }
    }

    /// `q^{k/2}`.
    fn half_power(&self, k: i64) -> Real {
        if k == 0 {
            return self.p.from_int(1);
        }
        self.sqrt_q.clone().powi(k.into())
    }

    fn qint(&self, k: i64) -> Real {
        let inv = self.p.from_int(1) / self.q.clone();
        (self.half_power(2 * k) - self.half_power(-2 * k)) / (self.q.clone() - inv)
    }

    fn qfactorial(&self, k: i64) -> Real {
        (1..=k).fold(self.p.from_int(1), |acc, i| acc * self.qint(i))
    }
}

#[derive(Clone, Debug)]
pub struct Sl2Rep {
    pub n: u32,
    pub q: f64,
    pub basis: Basis,
    pub e: Matrix,
    pub f: Matrix,
    pub k: Matrix,
    /// `H e_j = (n − 2j) e_j`.
    pub weights: Vec<i64>,
}

/// Frobenius norms of the relation defects, which bound the operator norms.
#[derive(Clone, Debug)]
pub struct RelationResiduals {
    /// `KE − q²EK`.
    pub ke: Real,
    /// `KF − q^{−2}FK`.
    pub kf: Real,
    /// `[E,F] − (K−K^{−1})/(q−q^{−1})`.
    pub ef: Real,
}

impl RelationResiduals {
    pub fn max(&self) -> Real {
        [&self.ke, &self.kf, &self.ef]
            .into_iter()
            .max_by(|a, b| a.partial_cmp(b).expect("ordered reals"))
            .expect("three entries")
            .clone()
    }
}

pub fn build_sl2_rep(q: f64, n: u32, basis: Basis, p: Precision) -> Result<Sl2Rep> {
    check_q(q)?;
    let qn = QNumbers::new(q, p);
    let ni = n as i64;
    let d = n as usize + 1;
    let mut e = Matrix::zeros(d, d, p);
    let mut f = Matrix::zeros(d, d, p);
    let weights: Vec<i64> = (0..=ni).map(|j| ni - 2 * j).collect();
    let k = Matrix::diagonal(weights.iter().map(|&w| qn.half_power(2 * w)).collect(), p);
    for j in 0..=ni {
        let ju = j as usize;
        if j > 0 {
            e[(ju - 1, ju)] = match basis {
                Basis::Standard => qn.qint(j),
                Basis::Unitary => {
                    qn.half_power(ni - 2 * j) * (qn.qint(j) * qn.qint(ni - j + 1)).sqrt()
                }
            };
        }
        if j < ni {
            f[(ju + 1, ju)] = match basis {
                Basis::Standard => qn.qint(ni - j),
                Basis::Unitary => {
                    qn.half_power(-(ni - 2 * j - 2)) * (qn.qint(j + 1) * qn.qint(ni - j)).sqrt()
                }
            };
        }
    }
    Ok(Sl2Rep {
        n,
        q,
        basis,
        e,
        f,
        k,
        weights,
    })
}

impl Sl2Rep {
    pub fn dimension(&self) -> usize {
        self.n as usize + 1
    }

    pub fn relation_residuals(&self, p: Precision) -> RelationResiduals {
        let qn = QNumbers::new(self.q, p);
        let q2 = qn.half_power(4);
        let qm2 = qn.half_power(-4);
        let ke = self
            .k
            .mul(&self.e)
            .sub(&self.e.mul(&self.k).scaled(&q2))
            .frobenius();
        let kf = self
            .k
            .mul(&self.f)
            .sub(&self.f.mul(&self.k).scaled(&qm2))
            .frobenius();
        let k_inv = Matrix::diagonal(
            self.weights
                .iter()
                .map(|&w| qn.half_power(-2 * w))
                .collect(),
            p,
        );
        let denom = qn.q.clone() - p.from_int(1) / qn.q.clone();
        let rhs = self.k.sub(&k_inv).scaled(&(p.from_int(1) / denom));
        let comm = self.e.mul(&self.f).sub(&self.f.mul(&self.e));
        RelationResiduals {
            ke,
            kf,
            ef: comm.sub(&rhs).frobenius(),
        }
    }
}

/// `(π_μ⊗π_λ)(R)` and `(π_μ⊗π_λ)(R₂₁)` for `μ = mϖ`, `λ = nϖ`, indexed by
/// `i·(n+1) + j` for `e_i⊗e_j`.
#[derive(Clone, Debug)]
pub struct RMatrixBlock {
    pub m: u32,
    pub n: u32,
    pub q: f64,
    pub r: Matrix,
    pub r21: Matrix,
}

fn power(a: &Matrix, k: u32, p: Precision) -> Matrix {
    (0..k).fold(Matrix::identity(a.rows(), p), |acc, _| acc.mul(a))
}

pub fn build_rmatrix_block(
    q: f64,
    m: u32,
    n: u32,
    basis: Basis,
    p: Precision,
) -> Result<RMatrixBlock> {
    let vm = build_sl2_rep(q, m, basis, p)?;
    let vn = build_sl2_rep(q, n, basis, p)?;
    let qn = QNumbers::new(q, p);
    let dim = vm.dimension() * vn.dimension();
    let mut s = Matrix::zeros(dim, dim, p);
    let mut s21 = Matrix::zeros(dim, dim, p);
    let gap = qn.q.clone() - p.from_int(1) / qn.q.clone();
    for k in 0..=m.min(n) {
        let ki = k as i64;
        let c = qn.half_power(ki * (ki - 1)) * gap.clone().powi(ki.into()) / qn.qfactorial(ki);
        s.add_assign(&power(&vm.e, k, p).kron(&power(&vn.f, k, p)).scaled(&c));
        s21.add_assign(&power(&vm.f, k, p).kron(&power(&vn.e, k, p)).scaled(&c));
    }
    let diag: Vec<Real> = vm
        .weights
        .iter()
        .flat_map(|&a| vn.weights.iter().map(move |&b| a * b))
        .map(|ab| qn.half_power(ab))
        .collect();
    for (row, d) in diag.iter().enumerate() {
        for col in 0..dim {
            s[(row, col)] = s[(row, col)].clone() * d.clone();
            s21[(row, col)] = s21[(row, col)].clone() * d.clone();
        }
    }
    Ok(RMatrixBlock {
        m,
        n,
        q,
        r: s,
        r21: s21,
    })
}

impl RMatrixBlock {
    /// Basis indices of total weight `m + n − 2s`.
    pub fn sector(&self, s: u32) -> Vec<usize> {
        let n1 = self.n as usize + 1;
        (0..=self.m as usize)
            .filter_map(|i| {
                let j = s as usize as isize - i as isize;
                (0..n1 as isize).contains(&j).then(|| i * n1 + j as usize)
            })
            .collect()
    }

    pub fn sector_count(&self) -> u32 {
        self.m + self.n + 1
    }
}

/// Digits needed to resolve every eigenvalue of `(R₂₁R)^{−1}` relative to
/// the largest one, on top of the requested precision.
pub fn working_precision(q: f64, m: u32, n: u32, p: Precision) -> Precision {
    let (m, n) = (m as f64, n as f64);
    let casimirs = (m * (m + 2.0) + n * (n + 2.0)) / 2.0;
    let range = 2.0 * m * n + 2.0 * m.min(n) + casimirs;
    let extra = (range * (1.0 / q).log10()).ceil() as u32 + 10;
    Precision::new(p.digits() + extra)
}

#[derive(Clone, Debug)]
pub struct EigenMatch {
    pub nu: Weight,
    /// `E(ν)`; the predicted eigenvalue is `q^{E(ν)}`.
    pub exponent: Rational,
    pub expected: Real,
    pub computed: Real,
    /// `log computed / log q`.
    pub observed_exponent: f64,
    pub rel_error: f64,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub q: f64,
    pub m: u32,
    pub n: u32,
    pub tol: f64,
    pub working_digits: u32,
    pub relation_residual_mu: Real,
    pub relation_residual_lambda: Real,
    /// `‖R₂₁ − Rᵀ‖ / ‖R‖`.
    pub transpose_residual: Real,
    /// Largest `‖M − Mᵀ‖ / ‖M‖` over sectors, `M = (R₂₁R)^{−1}`.
    pub symmetry_residual: Real,
    /// Largest `‖M·R₂₁R − 1‖` over sectors.
    pub inverse_residual: Real,
    /// Ascending by eigenvalue.
    pub eigenvalues: Vec<EigenMatch>,
    pub min_eigenvalue: Real,
    pub lambda_max: Real,
    pub sqrt_lambda_max: Real,
    /// Closed form `q^{−(λ,μ)} = q^{−mn/2}`.
    pub expected_norm: Real,
    pub norm_rel_error: f64,
    pub power_iteration_lambda_max: Real,
    pub power_iterations: usize,
    pub power_rel_error: f64,
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rel_error(a: &Real, b: &Real) -> f64 {
    real::to_f64(&(real::abs(&(a.clone() - b.clone())) / real::abs(b)))
}

/// Builds the blocks in the unitary basis, eigensolves `(R₂₁R)^{−1}` sector
/// by sector and compares against the fusion-predicted spectrum and norm.
pub fn verify_norm_formula(q: f64, m: u32, n: u32, tol: f64, p: Precision) -> Result<OracleReport> {
    check_q(q)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be > 0, got {tol}"
        )));
    }
    let wp = working_precision(q, m, n, p);
    let cfg = SessionConfig::new(q, wp)?;
    let a1 = RootSystem::new(&"A1".parse()?)?;
    let (mu, lambda) = (Weight::from([m as i64]), Weight::from([n as i64]));
    let mut failures = Vec::new();

    let vm = build_sl2_rep(q, m, Basis::Unitary, wp)?;
    let vn = build_sl2_rep(q, n, Basis::Unitary, wp)?;
    let relation_residual_mu = vm.relation_residuals(wp).max();
    let relation_residual_lambda = vn.relation_residuals(wp).max();
    for (name, r) in [
        ("V(μ)", &relation_residual_mu),
        ("V(λ)", &relation_residual_lambda),
    ] {
        if real::to_f64(r) >= RELATION_TOLERANCE {
            failures.push(format!(
                "relation residual on {name} is {:e}",
                real::to_f64(r)
            ));
        }
    }

    let block = build_rmatrix_block(q, m, n, Basis::Unitary, wp)?;
    let transpose_residual = block.r21.sub(&block.r.transpose()).frobenius() / block.r.frobenius();
    if real::to_f64(&transpose_residual) > RELATION_TOLERANCE {
        failures.push(format!(
            "R₂₁ differs from Rᵀ by {:e}",
            real::to_f64(&transpose_residual)
        ));
    }

    let mut computed = Vec::new();
    let mut symmetry_residual = wp.from_int(0);
    let mut inverse_residual = wp.from_int(0);
    let mut sectors = Vec::new();
    for s in 0..block.sector_count() {
        let idx = block.sector(s);
        let r = block.r.principal_submatrix(&idx);
        let r21 = block.r21.principal_submatrix(&idx);
        let product = r21.mul(&r);
        let inv = product
            .inverse(wp)
            .ok_or_else(|| Error::Internal(format!("R₂₁R is singular on sector {s}")))?;
        let res = inv
            .mul(&product)
            .sub(&Matrix::identity(idx.len(), wp))
            .frobenius();
        if res > inverse_residual {
            inverse_residual = res;
        }
        let asym = inv.sub(&inv.transpose()).frobenius() / inv.frobenius();
        if asym > symmetry_residual {
            symmetry_residual = asym;
        }
        let half = wp.from_int(1) / wp.from_int(2);
        let sym = {
            let mut t = inv.transpose();
            t.add_assign(&inv);
            t.scaled(&half)
        };
        computed.extend(sym.symmetric_eigenvalues(wp));
        sectors.push(sym);
    }
    if real::to_f64(&symmetry_residual) > RELATION_TOLERANCE {
        failures.push(format!(
            "(R₂₁R)^-1 is not self-adjoint: {:e}",
            real::to_f64(&symmetry_residual)
        ));
    }
    computed.sort_by(|a, b| a.partial_cmp(b).expect("ordered reals"));

    let spectrum = rmatrix_spectrum(&a1, &lambda, &mu)?;
    let mut expected: Vec<(Weight, Rational, Real)> = Vec::new();
    for c in &spectrum.components {
        let value = crate::qnorm::QExponent::new(c.exponent.clone()).eval(&cfg);
        for _ in 0..(c.dimension as u64 * c.multiplicity) {
            expected.push((c.nu.clone(), c.exponent.clone(), value.clone()));
        }
    }
    expected.sort_by(|a, b| a.2.partial_cmp(&b.2).expect("ordered reals"));
    if expected.len() != computed.len() {
        return Err(Error::Internal(format!(
            "predicted {} eigenvalues, block has {}",
            expected.len(),
            computed.len()
        )));
    }
    let ln_q = cfg.ln_q();
    let mut eigenvalues = Vec::with_capacity(computed.len());
    for (i, ((nu, exponent, exp_value), value)) in expected.into_iter().zip(computed).enumerate() {
        let rel = rel_error(&value, &exp_value);
        let observed_exponent = if value > Real::ZERO {
            real::to_f64(&(value.clone().ln() / ln_q.clone()))
        } else {
            f64::NAN
        };
        if rel.is_nan() || rel > tol {
            failures.push(format!(
                "eigenvalue {i} (ν = {nu}): expected q^{exponent} = {}, computed {}, relative error {rel:e}",
                real::render(&exp_value, 12),
                real::render(&value, 12)
            ));
        }
        eigenvalues.push(EigenMatch {
            nu,
            exponent,
            expected: exp_value,
            computed: value,
            observed_exponent,
            rel_error: rel,
        });
    }

    let min_eigenvalue = eigenvalues[0].computed.clone();
    if min_eigenvalue <= Real::ZERO {
        failures.push(format!(
            "block is not positive definite: λ_min = {}",
            real::render(&min_eigenvalue, 12)
        ));
    }
    let lambda_max = eigenvalues.last().expect("nonempty").computed.clone();
    let sqrt_lambda_max = if lambda_max > Real::ZERO {
        lambda_max.clone().sqrt()
    } else {
        wp.from_int(0)
    };
    let expected_norm = lminus_norm_exponent(&a1, &lambda, &mu)?.eval(&cfg);
    let norm_rel_error = rel_error(&sqrt_lambda_max, &expected_norm);
    if norm_rel_error.is_nan() || norm_rel_error > tol {
        failures.push(format!(
            "√Λ_max = {} but q^(-mn/2) = {}, relative error {norm_rel_error:e}",
            real::render(&sqrt_lambda_max, 12),
            real::render(&expected_norm, 12)
        ));
    }

    // the middle sector carries one eigenvector of every component
    let (power_iteration_lambda_max, power_iterations) =
        sectors[m.min(n) as usize].power_iteration(wp, 20_000);
    let power_rel_error = rel_error(&power_iteration_lambda_max, &lambda_max);
    if power_rel_error.is_nan() || power_rel_error > tol {
        failures.push(format!(
            "power iteration disagrees with the eigensolve: {power_rel_error:e}"
        ));
    }

    Ok(OracleReport {
        q,
        m,
        n,
        tol,
        working_digits: wp.digits(),
        relation_residual_mu,
        relation_residual_lambda,
        transpose_residual,
        symmetry_residual,
        inverse_residual,
        eigenvalues,
        min_eigenvalue,
        lambda_max,
        sqrt_lambda_max,
        expected_norm,
        norm_rel_error,
        power_iteration_lambda_max,
        power_iterations,
        power_rel_error,
        failures,
    })
}
