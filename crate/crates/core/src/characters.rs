//! Weight systems of irreducible modules via Freudenthal's recursion, and a
//! character-product decomposition used as an independent fusion oracle.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::fusion::FusionDecomposition;
use crate::root_system::RootSystem;
use crate::weight::Weight;

/// Character of the irreducible module with a given highest weight, stored
/// compressed to dominant weights; full Weyl orbits are expanded on demand.
#[derive(Debug)]
pub struct Character {
    highest_weight: Weight,
    dominant: Vec<(Weight, u64)>,
    index: HashMap<Weight, u64>,
    expanded: OnceLock<Vec<(Weight, u64)>>,
}

impl Character {
    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    /// Dominant weights with multiplicities, highest first.
    pub fn dominant_multiplicities(&self) -> &[(Weight, u64)] {
        &self.dominant
    }

    /// Multiplicity of an arbitrary weight, read off its dominant conjugate.
    pub fn multiplicity(&self, rs: &RootSystem, w: &Weight) -> u64 {
        let rep = rs.reflect_to_dominant(w.clone());
        self.index.get(&rep.weight).copied().unwrap_or(0)
    }

    /// Every weight with its multiplicity.
    pub fn weights(&self, rs: &RootSystem) -> &[(Weight, u64)] {
        self.expanded.get_or_init(|| {
            let mut out = Vec::new();
            for (nu, m) in &self.dominant {
                out.extend(weyl_orbit(rs, nu).into_iter().map(|w| (w, *m)));
            }
            out
        })
    }

    pub fn mults(&self, rs: &RootSystem) -> BTreeMap<Weight, u64> {
        self.weights(rs).iter().cloned().collect()
    }

    pub fn dimension(&self, rs: &RootSystem) -> u128 {
        self.weights(rs).iter().map(|(_, m)| *m as u128).sum()
    }
}

/// Memo table of characters keyed by highest weight. Entries are inserted
/// only once fully computed, so concurrent readers never see partial data.
pub struct CharacterCache<'a> {
    rs: &'a RootSystem,
    table: RwLock<HashMap<Weight, Arc<Character>>>,
}

impl<'a> CharacterCache<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        CharacterCache {
            rs,
            table: RwLock::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn get(&self, mu: &Weight) -> Result<Arc<Character>> {
        if let Some(ch) = self.table.read().expect("cache lock").get(mu) {
            return Ok(Arc::clone(ch));
        }
        let ch = Arc::new(weight_multiplicities(self.rs, mu)?);
        let mut table = self.table.write().expect("cache lock");
        Ok(Arc::clone(table.entry(mu.clone()).or_insert(ch)))
    }
}

/// Dominant weights of V(μ), sorted by decreasing `(ν+ρ, ν+ρ)` and then
/// lexicographically. Generated by closing `{μ}` under root strings
/// `ν - kα` (1 ≤ k ≤ ⟨ν, α^∨⟩) followed by reflection to the dominant chamber.
pub fn dominant_weights(rs: &RootSystem, mu: &Weight) -> Result<Vec<Weight>> {
    rs.check_dominant(mu)?;
    let mut seen: HashSet<Weight> = HashSet::from([mu.clone()]);
    let mut queue = VecDeque::from([mu.clone()]);
    while let Some(nu) = queue.pop_front() {
        for (k, alpha) in rs.positive_roots().iter().enumerate() {
            let pairing = rs.root_pairing(nu.coords(), k);
            let alpha_sq = rs.root_pairing(alpha.coords(), k);
            let string_len = (2 * pairing) / alpha_sq;
            for j in 1..=string_len as i64 {
                let rep = rs.reflect_to_dominant(nu.sub_scaled(j, alpha)).weight;
                if seen.insert(rep.clone()) {
                    queue.push_back(rep);
                }
            }
        }
    }
    let mut out: Vec<(i128, Weight)> = seen
        .into_iter()
        .map(|nu| {
            let shifted = &nu + rs.rho();
            (rs.inner_scaled(shifted.coords(), shifted.coords()), nu)
        })
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(out.into_iter().map(|(_, nu)| nu).collect())
}

/// Weyl orbit of a dominant weight.
pub fn weyl_orbit(rs: &RootSystem, dominant: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([dominant.clone()]);
    let mut out = vec![dominant.clone()];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for (i, &c) in x.coords().iter().enumerate() {
            if c > 0 {
                let image = x.sub_scaled(c, &rs.simple_roots()[i]);
                if seen.insert(image.clone()) {
                    out.push(image);
                }
            }
        }
    }
    out
}

/// Freudenthal's formula
/// `m(ν) = 2 Σ_{α>0} Σ_{k≥1} m(ν+kα)(ν+kα, α) / ((μ+ρ)² − (ν+ρ)²)`,
/// evaluated on dominant weights in decreasing `(ν+ρ)²` order.
pub fn weight_multiplicities(rs: &RootSystem, mu: &Weight) -> Result<Character> {
    let dominant = dominant_weights(rs, mu)?;
    let members: HashSet<&Weight> = dominant.iter().collect();
    let norm_shift = |nu: &Weight| {
        let s = nu + rs.rho();
        rs.inner_scaled(s.coords(), s.coords())
    };
    let top = norm_shift(mu);
    let mut index: HashMap<Weight, u64> = HashMap::with_capacity(dominant.len());
    let mut ordered = Vec::with_capacity(dominant.len());
    for nu in &dominant {
        let m = if nu == mu {
            1
        } else {
            let mut num = 0i128;
            for (k, alpha) in rs.positive_roots().iter().enumerate() {
                let mut w = nu.clone();
                loop {
                    w = &w + alpha;
                    let rep = rs.reflect_to_dominant(w.clone()).weight;
                    if !members.contains(&rep) {
                        break;
                    }
                    let higher = *index.get(&rep).ok_or_else(|| {
                        Error::Internal(format!(
                            "Freudenthal order: {rep} needed before it was computed"
                        ))
                    })?;
                    num += higher as i128 * rs.root_pairing(w.coords(), k);
                }
            }
            let den = top - norm_shift(nu);
            if den <= 0 || (2 * num) % den != 0 {
                return Err(Error::Internal(format!(
                    "Freudenthal recursion for {mu} produced non-integral multiplicity at {nu}"
                )));
            }
            let m = 2 * num / den;
            if m <= 0 {
                return Err(Error::Internal(format!(
                    "Freudenthal recursion for {mu} produced multiplicity {m} at {nu}"
                )));
            }
            m as u64
        };
        index.insert(nu.clone(), m);
        ordered.push((nu.clone(), m));
    }
    Ok(Character {
        highest_weight: mu.clone(),
        dominant: ordered,
        index,
        expanded: OnceLock::new(),
    })
}

/// Decomposes `χ_λ · χ_μ` by repeatedly stripping the character of the
/// highest remaining weight.
pub fn character_product_decompose(
    rs: &RootSystem,
    lambda: &Weight,
    mu: &Weight,
) -> Result<FusionDecomposition> {
    character_product_decompose_with(&CharacterCache::new(rs), lambda, mu)
}

pub fn character_product_decompose_with(
    cache: &CharacterCache<'_>,
    lambda: &Weight,
    mu: &Weight,
) -> Result<FusionDecomposition> {
    let rs = cache.root_system();
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    let (small, large) = if rs.weyl_dim(lambda)? <= rs.weyl_dim(mu)? {
        (cache.get(lambda)?, cache.get(mu)?)
    } else {
        (cache.get(mu)?, cache.get(lambda)?)
    };

    // Every weight of V(λ)⊗V(μ) is a weight of V(λ+μ).
    let top = lambda + mu;
    let candidates = dominant_weights(rs, &top)?;
    let mut product: HashMap<Weight, i128> = HashMap::with_capacity(candidates.len());
    for nu in &candidates {
        let total: i128 = small
            .weights(rs)
            .iter()
            .map(|(a, m)| *m as i128 * large.multiplicity(rs, &(nu - a)) as i128)
            .sum();
        if total != 0 {
            product.insert(nu.clone(), total);
        }
    }

    let mut components = BTreeMap::new();
    for nu in &candidates {
        let c = product.get(nu).copied().unwrap_or(0);
        if c == 0 {
            continue;
        }
        if c < 0 {
            return Err(Error::Internal(format!(
                "character product {lambda}⊗{mu} left negative coefficient {c} at {nu}"
            )));
        }
        components.insert(nu.clone(), c as u64);
        for (w, m) in cache.get(nu)?.dominant_multiplicities() {
            *product.entry(w.clone()).or_insert(0) -= c * *m as i128;
        }
    }
    if let Some((w, c)) = product.iter().find(|(_, c)| **c != 0) {
        return Err(Error::Internal(format!(
            "character product {lambda}⊗{mu} has residue {c} at {w}"
        )));
    }
    Ok(FusionDecomposition::new(
        lambda.clone(),
        mu.clone(),
        components,
    ))
}
