//! Root-system data and weight-lattice geometry in the fundamental-weight
//! basis. The bilinear form is normalized per simple factor so that the
//! shortest roots have squared length 2; distinct factors are orthogonal.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::ops::Range;

use dashu_int::IBig;
use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::lie_type::LieType;
use crate::weight::Weight;

/// Result of reflecting a weight into the dominant chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantRep {
    pub weight: Weight,
    /// `(-1)^(number of simple reflections applied)`.
    pub sign: i8,
    /// The representative lies on a chamber wall (some coordinate is zero),
    /// i.e. the input is fixed by a reflection.
    pub singular: bool,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<Rational>,
    gram: Vec<Vec<Rational>>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    positive_root_coeffs: Vec<Vec<i64>>,
    factor_ranges: Vec<Range<usize>>,
    rho: Weight,
    // (x, y) = xᵀ · scaled_gram · y / scale
    scale: i128,
    scaled_gram: Vec<Vec<i128>>,
    // scale · (x, α_k) = x · root_pairing[k]
    root_pairing: Vec<Vec<i128>>,
}

impl RootSystem {
    pub fn new(lie_type: &LieType) -> Result<Self> {
        let rank = lie_type.rank();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut symmetrizers = vec![RBig::ONE; rank];
        let mut factor_ranges = Vec::new();
        let mut offset = 0;
        for factor in lie_type.factors() {
            let block = factor.cartan_matrix();
            let n = factor.rank;
            for i in 0..n {
                for j in 0..n {
                    cartan[offset + i][offset + j] = block[i][j];
                }
            }
            let d = factor_symmetrizers(&block);
            symmetrizers[offset..offset + n].clone_from_slice(&d);
            factor_ranges.push(offset..offset + n);
            offset += n;
        }

        // G·A = D, hence G = D·A⁻¹.
        let cartan_q: Vec<Vec<Rational>> = cartan
            .iter()
            .map(|row| row.iter().map(|&a| RBig::from(a)).collect())
            .collect();
        let inverse = exact::invert(&cartan_q)
            .ok_or_else(|| Error::Internal(format!("Cartan matrix of {lie_type} is singular")))?;
        let gram: Vec<Vec<Rational>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| &symmetrizers[i] * &inverse[i][j])
                    .collect()
            })
            .collect();

        let scale = gram
            .iter()
            .flatten()
            .map(|g| i128::try_from(g.denominator()).expect("small denominator"))
            .fold(1i128, lcm);
        let scaled_gram: Vec<Vec<i128>> = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|g| {
                        let s = g * RBig::from(IBig::from(scale));
                        i128::try_from(s.numerator()).expect("integral scaled entry")
                    })
                    .collect()
            })
            .collect();

        let simple_roots: Vec<Weight> = (0..rank)
            .map(|j| Weight::new((0..rank).map(|i| cartan[i][j]).collect()))
            .collect();

        let (positive_roots, positive_root_coeffs) = positive_roots_by_closure(&simple_roots);
        let root_pairing = positive_roots
            .iter()
            .map(|alpha| {
                (0..rank)
                    .map(|i| {
                        (0..rank)
                            .map(|j| scaled_gram[i][j] * alpha.coords()[j] as i128)
                            .sum()
                    })
                    .collect()
            })
            .collect();

        let rs = RootSystem {
            lie_type: lie_type.clone(),
            rank,
            cartan,
            symmetrizers,
            gram,
            simple_roots,
            positive_roots,
            positive_root_coeffs,
            factor_ranges,
            rho: Weight::rho(rank),
            scale,
            scaled_gram,
            root_pairing,
        };
        rs.self_check()?;
        Ok(rs)
    }

    fn self_check(&self) -> Result<()> {
        let expected: usize = self
            .lie_type
            .factors()
            .iter()
            .map(|f| f.positive_root_count())
            .sum();
        if self.positive_roots.len() != expected {
            return Err(Error::Internal(format!(
                "{} has {} positive roots, expected {expected}",
                self.lie_type,
                self.positive_roots.len()
            )));
        }
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if *g != self.gram[j][i] {
                    return Err(Error::Internal(format!(
                        "Gram matrix asymmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lie_type(&self) -> &LieType {
        &self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_i = (α_i, α_i)/2`; `D·A` is symmetric.
    pub fn symmetrizers(&self) -> &[Rational] {
        &self.symmetrizers
    }

    /// `gram[i][j] = (ϖ_i, ϖ_j)`.
    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Coefficients of each positive root in the simple-root basis.
    pub fn positive_root_coefficients(&self) -> &[Vec<i64>] {
        &self.positive_root_coeffs
    }

    /// Index ranges of the simple factors inside the coordinate vector.
    pub fn factor_ranges(&self) -> &[Range<usize>] {
        &self.factor_ranges
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn check(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                weight: w.clone(),
                rank: self.rank,
                found: w.rank(),
            });
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.clone()));
        }
        Ok(())
    }

    pub fn inner_product(&self, x: &Weight, y: &Weight) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.ratio(self.inner_scaled(x.coords(), y.coords())))
    }

    pub fn norm_sq(&self, x: &Weight) -> Result<Rational> {
        self.inner_product(x, x)
    }

    /// Quadratic Casimir exponent `(μ, μ + 2ρ)`.
    pub fn casimir(&self, mu: &Weight) -> Result<Rational> {
        self.check_dominant(mu)?;
        Ok(self.ratio(self.casimir_scaled(mu)))
    }

    /// Weyl dimension formula `∏_{α>0} (μ+ρ, α)/(ρ, α)`.
    pub fn weyl_dim(&self, mu: &Weight) -> Result<u128> {
        self.check_dominant(mu)?;
        let shifted = mu + &self.rho;
        let mut num = IBig::ONE;
        let mut den = IBig::ONE;
        for pairing in &self.root_pairing {
            num *= IBig::from(dot(shifted.coords(), pairing));
            den *= IBig::from(dot(self.rho.coords(), pairing));
        }
        if den < IBig::ZERO {
            num = -num;
            den = -den;
        }
        let dim = RBig::from_parts(num, den.try_into().expect("positive"));
        if !dim.denominator().is_one() {
            return Err(Error::Internal(format!(
                "Weyl dimension of {mu} is not an integer: {dim}"
            )));
        }
        u128::try_from(dim.numerator())
            .map_err(|_| Error::Internal(format!("Weyl dimension of {mu} overflows u128")))
    }

    /// Applies simple reflections `s_i(x) = x - x_i α_i` while some
    /// coordinate is negative.
    pub fn dominant_representative(&self, x: &Weight) -> Result<DominantRep> {
        self.check(x)?;
        Ok(self.reflect_to_dominant(x.clone()))
    }

    /// `-w₀μ`, the highest weight of the dual representation.
    pub fn conjugate_weight(&self, mu: &Weight) -> Result<Weight> {
        self.check_dominant(mu)?;
        Ok(self.reflect_to_dominant(-mu).weight)
    }

    pub(crate) fn reflect_to_dominant(&self, mut x: Weight) -> DominantRep {
        let mut sign = 1i8;
        while let Some(i) = x.coords().iter().position(|&c| c < 0) {
            let k = x.coords()[i];
            let alpha = self.simple_roots[i].coords();
            for (c, a) in x.coords_mut().iter_mut().zip(alpha) {
                *c -= k * a;
            }
            sign = -sign;
        }
        let singular = x.coords().contains(&0);
        DominantRep {
            weight: x,
            sign,
            singular,
        }
    }

    pub(crate) fn ratio(&self, scaled: i128) -> Rational {
        exact::rational(scaled, self.scale)
    }

    pub(crate) fn inner_scaled(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut total = 0i128;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.scaled_gram[i];
            let s: i128 = row.iter().zip(y).map(|(g, &yj)| g * yj as i128).sum();
            total += xi as i128 * s;
        }
        total
    }

    pub(crate) fn casimir_scaled(&self, mu: &Weight) -> i128 {
        let shifted = mu + &self.rho.scale(2);
        self.inner_scaled(mu.coords(), shifted.coords())
    }

    /// `scale · (x, α)` for the `k`-th positive root.
    pub(crate) fn root_pairing(&self, x: &[i64], k: usize) -> i128 {
        dot(x, &self.root_pairing[k])
    }
}

fn dot(x: &[i64], y: &[i128]) -> i128 {
    x.iter().zip(y).map(|(&a, &b)| a as i128 * b).sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

/// Symmetrizers for one connected Cartan block, normalized so the shortest
/// simple root has `d = 1`.
fn factor_symmetrizers(block: &[Vec<i64>]) -> Vec<Rational> {
    let n = block.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    d[0] = Some(RBig::ONE);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && block[i][j] != 0 && d[j].is_none() {
                // d_i A_ij = d_j A_ji
                let di = d[i].clone().expect("visited");
                d[j] = Some(di * exact::rational(block[i][j] as i128, block[j][i] as i128));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Rational> = d
        .into_iter()
        .map(|x| x.expect("connected diagram"))
        .collect();
    let min = d.iter().min().expect("nonempty").clone();
    d.iter().map(|x| x / &min).collect()
}

/// Closes the simple roots under simple reflections and keeps the positive
/// roots, tracking simple-root coefficients alongside ϖ-coordinates.
fn positive_roots_by_closure(simple: &[Weight]) -> (Vec<Weight>, Vec<Vec<i64>>) {
    let rank = simple.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<(Weight, Vec<i64>)> = VecDeque::new();
    for (i, alpha) in simple.iter().enumerate() {
        let mut c = vec![0i64; rank];
        c[i] = 1;
        seen.insert(c.clone());
        queue.push_back((alpha.clone(), c));
    }
    let mut roots = Vec::new();
    while let Some((root, coeffs)) = queue.pop_front() {
        for i in 0..rank {
            let k = root.coords()[i];
            if k == 0 {
                continue;
            }
            let image = root.sub_scaled(k, &simple[i]);
            let mut c = coeffs.clone();
            c[i] -= k;
            if seen.insert(c.clone()) {
                queue.push_back((image, c));
            }
        }
        roots.push((root, coeffs));
    }
    let mut positive: BTreeSet<(i64, Vec<i64>, Weight)> = BTreeSet::new();
    for (root, coeffs) in roots {
        if coeffs.iter().all(|&c| c >= 0) {
            positive.insert((coeffs.iter().sum(), coeffs, root));
        }
    }
    positive.into_iter().map(|(_, c, r)| (r, c)).unzip()
}
