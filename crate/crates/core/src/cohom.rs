//! Bigraded cohomology `H^{n,m}(G, k)` of a finite gr-group scheme, read off
//! a minimal free resolution of `k` over the group algebra `kG`.
//!
//! The resolution is built one internal degree at a time with linear algebra
//! over `F_p`. Internal degrees stay symbolic; a degree's weight under
//! [`EvalWeights`] only decides the processing order and the cutoff.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grpoly::{EvalWeights, Fp, InternalDegree};
use crate::hopf::{FiniteAlgebra, HopfPresentation};
use crate::linalg::{Echelon, Matrix, SparseVec};

/// Largest stratum `F_n(δ)` the resolution will handle.
pub const MAX_STRATUM_DIM: usize = 4096;

/// A minimal free resolution `… → F_1 → F_0 = kG → k`, truncated in
/// cohomological degree and internal weight.
///
/// Elements of `F_n` are dense vectors indexed by `generator · dim + basis`.
#[derive(Clone, Debug)]
pub struct Resolution {
    alg: FiniteAlgebra,
    weights: EvalWeights,
    max_n: u32,
    max_weight: i64,
    /// Internal degree of each generator of `F_n`, in the algebra's grading.
    generators: Vec<Vec<InternalDegree>>,
    /// `differentials[n][g]` is `d(e_g)` in `F_{n-1}`; empty for `n = 0`.
    differentials: Vec<Vec<Vec<u32>>>,
}

fn weight(d: InternalDegree, w: EvalWeights) -> i64 {
    -d.eval(w)
}

/// Resolves `k` over `alg` through cohomological degree `max_n`, keeping
/// internal degrees of weight at most `max_weight`.
pub fn minimal_resolution(alg: &FiniteAlgebra, max_n: u32, max_weight: i64) -> Result<Resolution> {
    minimal_resolution_with(alg, max_n, max_weight, EvalWeights::default())
}

pub fn minimal_resolution_with(
    alg: &FiniteAlgebra,
    max_n: u32,
    max_weight: i64,
    weights: EvalWeights,
) -> Result<Resolution> {
    let fp = Fp::new(alg.p as u64)?;
    let dim = alg.dim();
    if !alg.augmentation_is_multiplicative() {
        return Err(Error::Invalid("the augmentation is not multiplicative".into()));
    }
    if !alg.degrees[alg.unit].is_zero() {
        return Err(Error::Invalid("the unit is not in degree zero".into()));
    }
    for (a, d) in alg.degrees.iter().enumerate() {
        if a != alg.unit && weight(*d, weights) <= 0 {
            return Err(Error::Invalid(format!(
                "basis element {} has nonpositive weight; choose other evaluation weights",
                alg.labels[a]
            )));
        }
    }
    let ideal: Vec<usize> = (0..dim).filter(|&a| a != alg.unit).collect();
    let mut res = Resolution {
        alg: alg.clone(),
        weights,
        max_n,
        max_weight,
        generators: vec![vec![InternalDegree::ZERO]],
        differentials: vec![Vec::new()],
    };

    // kernel of the augmentation: the augmentation ideal itself
    let mut kernel: HashMap<InternalDegree, Vec<Vec<u32>>> = HashMap::new();
    for &a in &ideal {
        if weight(alg.degrees[a], weights) <= max_weight {
            kernel.entry(alg.degrees[a]).or_default().push(alg.basis_vector(a));
        }
    }

    for n in 0..max_n {
        let rank = res.generators[n as usize].len();
        let mut degrees: Vec<InternalDegree> = kernel.keys().copied().collect();
        degrees.sort_by_key(|d| (weight(*d, weights), *d));
        let mut new_gens = Vec::new();
        let mut new_diffs = Vec::new();
        for delta in degrees {
            let ks = &kernel[&delta];
            // decomposables: the augmentation ideal times the kernel
            let mut dec: Echelon<()> = Echelon::new(fp);
            for &a in &ideal {
                let Some(lower) = kernel.get(&(delta - alg.degrees[a])) else {
                    continue;
                };
                for k in lower {
                    dec.insert((), &to_sparse(&act(alg, a, k, rank)));
                }
            }
            for k in ks {
                if dec.insert((), &to_sparse(k)) {
                    new_gens.push(delta);
                    new_diffs.push(k.clone());
                }
            }
        }
        res.generators.push(new_gens);
        res.differentials.push(new_diffs);
        if n + 1 < max_n {
            kernel = res.kernel_of(n as usize + 1, fp)?;
        }
    }
    Ok(res)
}

fn to_sparse(v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x))
        .collect()
}

/// `e_a · x` for `x` in a free module of the given rank.
fn act(alg: &FiniteAlgebra, a: usize, x: &[u32], rank: usize) -> Vec<u32> {
    let dim = alg.dim();
    let ea = alg.basis_vector(a);
    let mut out = Vec::with_capacity(rank * dim);
    for g in 0..rank {
        out.extend(alg.mul_vec(&ea, &x[g * dim..(g + 1) * dim]));
    }
    out
}

impl Resolution {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn rank(&self, n: usize) -> usize {
        self.generators[n].len()
    }

    pub fn generator_degrees(&self, n: usize) -> &[InternalDegree] {
        &self.generators[n]
    }

    /// `d(e_g)` for the `g`th generator of `F_n`, `n ≥ 1`.
    pub fn differential(&self, n: usize, g: usize) -> &[u32] {
        &self.differentials[n][g]
    }

    /// `d_n(x)` for `x` in `F_n`; the augmentation when `n = 0`.
    pub fn apply(&self, n: usize, x: &[u32]) -> Vec<u32> {
        let alg = &self.alg;
        let dim = alg.dim();
        if n == 0 {
            return vec![x[alg.unit]];
        }
        let fp = Fp::new(alg.p as u64).expect("prime checked on construction");
        let mut out = vec![0u32; self.rank(n - 1) * dim];
        for g in 0..self.rank(n) {
            let coeff = &x[g * dim..(g + 1) * dim];
            for a in 0..dim {
                if coeff[a] == 0 {
                    continue;
                }
                let image = act(alg, a, &self.differentials[n][g], self.rank(n - 1));
                for (o, v) in out.iter_mut().zip(image) {
                    *o = fp.add(*o, fp.mul(coeff[a], v));
                }
            }
        }
        out
    }

    /// Kernel of `d_n` in every internal degree within the weight bound.
    fn kernel_of(&self, n: usize, fp: Fp) -> Result<HashMap<InternalDegree, Vec<Vec<u32>>>> {
        let alg = &self.alg;
        let dim = alg.dim();
        let rank = self.rank(n);
        let mut strata: BTreeMap<InternalDegree, Vec<(usize, usize)>> = BTreeMap::new();
        for (g, dg) in self.generators[n].iter().enumerate() {
            for a in 0..dim {
                let d = *dg + alg.degrees[a];
                if weight(d, self.weights) <= self.max_weight {
                    strata.entry(d).or_default().push((g, a));
                }
            }
        }
        let target = self.rank(n - 1) * dim;
        let mut out = HashMap::new();
        for (delta, cells) in strata {
            if cells.len() > MAX_STRATUM_DIM {
                return Err(Error::bound("resolution stratum dimension", MAX_STRATUM_DIM));
            }
            let mut m = Matrix::zeros(target, cells.len());
            for (c, &(g, a)) in cells.iter().enumerate() {
                let image = act(alg, a, &self.differentials[n][g], self.rank(n - 1));
                for (r, v) in image.into_iter().enumerate() {
                    if v != 0 {
                        m.set(r, c, v);
                    }
                }
            }
            let ker: Vec<Vec<u32>> = m
                .kernel(fp)
                .into_iter()
                .map(|local| {
                    let mut x = vec![0u32; rank * dim];
                    for (c, &(g, a)) in cells.iter().enumerate() {
                        x[g * dim + a] = local[c];
                    }
                    x
                })
                .collect();
            if !ker.is_empty() {
                out.insert(delta, ker);
            }
        }
        Ok(out)
    }

    /// Every differential has entries in the augmentation ideal.
    pub fn is_minimal(&self) -> bool {
        let dim = self.alg.dim();
        let unit = self.alg.unit;
        self.differentials
            .iter()
            .skip(1)
            .flatten()
            .all(|v| v.chunks(dim).all(|c| c[unit] == 0))
    }

    /// `d_n ∘ d_{n+1} = 0` on every generator, including `ε ∘ d_1`.
    pub fn composites_vanish(&self) -> bool {
        (1..self.differentials.len()).all(|n| {
            self.differentials[n]
                .iter()
                .all(|v| self.apply(n - 1, v).iter().all(|&x| x == 0))
        })
    }

    /// `dim F_n(δ)` for every internal degree `δ` within the weight bound.
    pub fn stratum_dims(&self, n: usize) -> BTreeMap<InternalDegree, usize> {
        let mut out = BTreeMap::new();
        for dg in &self.generators[n] {
            for da in &self.alg.degrees {
                let d = *dg + *da;
                if weight(d, self.weights) <= self.max_weight {
                    *out.entry(d).or_insert(0) += 1;
                }
            }
        }
        out
    }

    /// Cohomology dimensions: generators of `F_n`, internal degree negated
    /// back to the cohomology grading.
    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (n, gens) in self.generators.iter().enumerate() {
            for d in gens {
                *entries.entry((n as u32, -*d)).or_insert(0) += 1;
            }
        }
        BettiTable {
            max_n: self.max_n,
            max_weight: self.max_weight,
            weights: self.weights,
            entries: entries
                .into_iter()
                .map(|((n, degree), dim)| BettiEntry { n, degree, dim })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub n: u32,
    pub degree: InternalDegree,
    pub dim: usize,
}

/// Nonzero `dim H^{n,m}` for `n ≤ max_n` and `m` of weight at most
/// `max_weight`. Absent entries inside the bounds are zero; nothing outside
/// them is claimed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub max_n: u32,
    pub max_weight: i64,
    pub weights: EvalWeights,
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn get(&self, n: u32, m: InternalDegree) -> usize {
        self.entries
            .iter()
            .find(|e| e.n == n && e.degree == m)
            .map_or(0, |e| e.dim)
    }

    /// `dim H^n` summed over internal degrees, for `n = 0..=max_n`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_n as usize + 1];
        for e in &self.entries {
            out[e.n as usize] += e.dim;
        }
        out
    }

    /// Internal degrees occurring in `H^n`, with multiplicity.
    pub fn row(&self, n: u32) -> BTreeMap<InternalDegree, usize> {
        self.entries
            .iter()
            .filter(|e| e.n == n)
            .map(|e| (e.degree, e.dim))
            .collect()
    }

    pub fn degrees(&self) -> BTreeSet<InternalDegree> {
        self.entries.iter().map(|e| e.degree).collect()
    }
}

pub fn cohomology_hilbert(alg: &FiniteAlgebra, max_n: u32, max_weight: i64) -> Result<BettiTable> {
    Ok(minimal_resolution(alg, max_n, max_weight)?.betti_table())
}

/// Cohomology of the gr-group scheme presented by `pres`, through its group
/// algebra.
pub fn cohomology_of(pres: &HopfPresentation, max_n: u32, max_weight: i64) -> Result<BettiTable> {
    cohomology_hilbert(&pres.dual_group_algebra()?, max_n, max_weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn t(k: i64) -> InternalDegree {
        InternalDegree::t() * k
    }

    #[test]
    fn trivial_group() {
        let pres = HopfPresentation::trivial(2).unwrap();
        let table = cohomology_of(&pres, 4, 20).unwrap();
        assert_eq!(table.totals(), [1, 0, 0, 0, 0]);
        assert_eq!(table.get(0, InternalDegree::ZERO), 1);
    }

    #[test]
    fn truncated_polynomial_in_one_variable() {
        // F_2[t]/(t^2): kG = k[u]/(u^2), one generator in every degree
        let pres = fixtures::additive(2, 1);
        let res = minimal_resolution(&pres.dual_group_algebra().unwrap(), 5, 40).unwrap();
        for n in 0..=5 {
            assert_eq!(res.generator_degrees(n), [-t(n as i64)]);
        }
        assert!(res.is_minimal());
        assert!(res.composites_vanish());
    }

    #[test]
    fn table_lists_degrees_positively() {
        let table = cohomology_of(&fixtures::additive(2, 2), 3, 40).unwrap();
        assert_eq!(table.totals(), [1, 2, 3, 4]);
        let row: Vec<_> = table.row(2).into_iter().collect();
        assert_eq!(row, [(t(2), 1), (t(3), 1), (t(4), 1)]);
    }

    #[test]
    fn weight_cutoff_drops_entries() {
        let table = cohomology_of(&fixtures::additive(2, 1), 6, 7).unwrap();
        // |t| weighs 2, so H^n lives in weight 2n
        assert_eq!(table.totals(), [1, 1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn nonpositive_weights_are_rejected() {
        let mut alg = fixtures::additive(2, 1).dual_group_algebra().unwrap();
        let other = 1 - alg.unit;
        alg.degrees[other] = InternalDegree::t();
        assert!(matches!(minimal_resolution(&alg, 2, 10), Err(Error::Invalid(_))));
    }
}
