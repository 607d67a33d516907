//! Tensor product decomposition `V(λ)⊗V(μ) ≅ ⊕ m_ν V(ν)` by the
//! Brauer–Klimyk rule.

use std::collections::{BTreeMap, HashMap};

use crate::characters::CharacterCache;
use crate::error::{Error, Result};
use crate::root_system::RootSystem;
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionDecomposition {
    lambda: Weight,
    mu: Weight,
    components: BTreeMap<Weight, u64>,
}

impl FusionDecomposition {
    pub(crate) fn new(lambda: Weight, mu: Weight, components: BTreeMap<Weight, u64>) -> Self {
        FusionDecomposition {
            lambda,
            mu,
            components,
        }
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    pub fn components(&self) -> &BTreeMap<Weight, u64> {
        &self.components
    }

    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.components.get(nu).copied().unwrap_or(0)
    }

    pub fn contains(&self, nu: &Weight) -> bool {
        self.components.contains_key(nu)
    }

    /// Components ordered by decreasing level, then reverse-lexicographically,
    /// so the Cartan component `λ+μ` comes first.
    pub fn highest_first(&self) -> Vec<(&Weight, u64)> {
        let mut out: Vec<(&Weight, u64)> = self.components.iter().map(|(w, m)| (w, *m)).collect();
        out.sort_by(|a, b| b.0.level().cmp(&a.0.level()).then_with(|| b.0.cmp(a.0)));
        out
    }

    /// `Σ m_ν · dim V(ν)`.
    pub fn total_dimension(&self, rs: &RootSystem) -> Result<u128> {
        self.components
            .iter()
            .map(|(nu, m)| Ok(*m as u128 * rs.weyl_dim(nu)?))
            .sum()
    }
}

pub fn tensor_decompose(
    rs: &RootSystem,
    lambda: &Weight,
    mu: &Weight,
) -> Result<FusionDecomposition> {
    tensor_decompose_with(&CharacterCache::new(rs), lambda, mu)
}

/// For each weight `ν′` of the factor with smaller dimension, the shifted
/// weight `λ + ν′ + ρ` is reflected into the dominant chamber; wall weights
/// drop out, the rest contribute `±mult(ν′)` to the reflected component.
pub fn tensor_decompose_with(
    cache: &CharacterCache<'_>,
    lambda: &Weight,
    mu: &Weight,
) -> Result<FusionDecomposition> {
    let rs = cache.root_system();
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    let (fixed, expanded) = if rs.weyl_dim(lambda)? < rs.weyl_dim(mu)? {
        (mu, lambda)
    } else {
        (lambda, mu)
    };
    let shift = fixed + rs.rho();
    let character = cache.get(expanded)?;
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (w, m) in character.weights(rs) {
        let rep = rs.reflect_to_dominant(&shift + w);
        if rep.singular {
            continue;
        }
        let xi = &rep.weight - rs.rho();
        *acc.entry(xi).or_insert(0) += rep.sign as i64 * *m as i64;
    }
    let mut components = BTreeMap::new();
    for (xi, c) in acc {
        match c {
            0 => {}
            c if c < 0 => {
                return Err(Error::Internal(format!(
                    "Klimyk cancellation left multiplicity {c} at {xi} in {lambda}⊗{mu}"
                )))
            }
            c => {
                components.insert(xi, c as u64);
            }
        }
    }
    let top = lambda + mu;
    if components.get(&top) != Some(&1) {
        return Err(Error::Internal(format!(
            "Cartan component {top} missing from {lambda}⊗{mu}"
        )));
    }
    Ok(FusionDecomposition::new(
        lambda.clone(),
        mu.clone(),
        components,
    ))
}

/// Whether the trivial module occurs in `V(λ)⊗V(μ)`.
pub fn contains_trivial(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<bool> {
    let d = tensor_decompose(rs, lambda, mu)?;
    Ok(d.contains(&Weight::zero(rs.rank())))
}
