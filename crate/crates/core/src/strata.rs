//! Closed-form arithmetic on strata, the rank–degree scan, and the reduced
//! degree of endomorphism algebras.

use num_integer::Roots;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::origami::{partitions, Stratum};

/// `2g − 2 + n_z`, the dimension of the projectivized stratum.
pub fn stratum_dim(s: &Stratum) -> Result<u64> {
    if s.zero_count() == 0 {
        return Err(Error::InvalidInput("stratum dimension needs at least one zero".into()));
    }
    Ok(2 * s.genus() - 2 + s.zero_count() as u64)
}

/// `2g + n_z − 1`, the rank of relative homology; `2` for the torus.
pub fn period_rank(s: &Stratum) -> u64 {
    if s.zero_count() == 0 {
        2
    } else {
        2 * s.genus() + s.zero_count() as u64 - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoperiodicData {
    /// Codimension `2g` of the leaves.
    pub codim: u64,
    /// `stratum_dim − min(2g, stratum_dim)`.
    pub leaf_dim: u64,
    /// `n_z − 1` rel directions.
    pub rel_rank: u64,
}

pub fn isoperiodic_codim(s: &Stratum) -> Result<IsoperiodicData> {
    let dim = stratum_dim(s)?;
    let codim = 2 * s.genus();
    Ok(IsoperiodicData {
        codim,
        leaf_dim: dim - codim.min(dim),
        rel_rank: s.zero_count() as u64 - 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumEntry {
    pub stratum: Stratum,
    pub dim: u64,
}

/// All strata of genus `g ≥ 2`, partitions in decreasing lexicographic order.
pub fn enumerate_strata(g: u64) -> Result<Vec<StratumEntry>> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g} must be at least 2")));
    }
    partitions((2 * g - 2) as usize)
        .into_iter()
        .map(|p| {
            let stratum = Stratum::new(p.into_iter().map(|a| a as u32).collect())?;
            let dim = stratum_dim(&stratum)?;
            Ok(StratumEntry { stratum, dim })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RankDegreeSolution {
    pub d: u64,
    pub k: u64,
    pub u: u64,
}

impl RankDegreeSolution {
    /// `u + 2k − 1 = d·(k(k+1)/2 + u·k)`.
    pub fn satisfies(d: u64, k: u64, u: u64) -> bool {
        u + 2 * k - 1 == d * (k * (k + 1) / 2 + u * k)
    }
}

/// Every `(d, k, u)` with `1 ≤ d ≤ d_max`, `1 ≤ k ≤ k_max`, `0 ≤ u ≤ u_max`
/// satisfying the rank–degree equation, in lexicographic order.
pub fn solve_rank_degree(d_max: u64, k_max: u64, u_max: u64) -> Result<Vec<RankDegreeSolution>> {
    if d_max == 0 || k_max == 0 || u_max == 0 {
        return Err(Error::OutOfRange("scan bounds must be at least 1".into()));
    }
    let mut out = Vec::new();
    for d in 1..=d_max {
        for k in 1..=k_max {
            for u in 0..=u_max {
                if RankDegreeSolution::satisfies(d, k, u) {
                    out.push(RankDegreeSolution { d, k, u });
                }
            }
        }
    }
    Ok(out)
}

/// One simple factor `Bᵢ^{nᵢ}` of an abelian variety up to isogeny, with
/// `End⁰(Bᵢ) = Dᵢ` a division algebra of center `Kᵢ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CmFactor {
    pub multiplicity: u64,
    /// `[Dᵢ : Kᵢ]`, a perfect square.
    pub division_degree: u64,
    /// `[Kᵢ : ℚ]`.
    pub center_degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CmFactorData {
    pub factors: Vec<CmFactor>,
    pub dim: u64,
}

/// `Σ nᵢ·[Dᵢ:Kᵢ]^{1/2}·[Kᵢ:ℚ]` and whether it reaches `2·dim`.
pub fn cm_reduced_degree(f: &CmFactorData) -> Result<(u64, bool)> {
    if f.dim == 0 || f.factors.is_empty() {
        return Err(Error::InvalidInput("dimension and factor list must be nonempty".into()));
    }
    let mut total = 0u64;
    for fac in &f.factors {
        if fac.multiplicity == 0 || fac.division_degree == 0 || fac.center_degree == 0 {
            return Err(Error::InvalidInput(format!("nonpositive entry in {fac:?}")));
        }
        let root = fac.division_degree.sqrt();
        if root * root != fac.division_degree {
            return Err(Error::InvalidInput(format!(
                "[D:K] = {} is not a perfect square",
                fac.division_degree
            )));
        }
        total += fac.multiplicity * root * fac.center_degree;
    }
    if total > 2 * f.dim {
        return Err(Error::Inconsistent(format!(
            "reduced degree {total} exceeds 2·dim = {}",
            2 * f.dim
        )));
    }
    Ok((total, total == 2 * f.dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: &[u32]) -> Stratum {
        Stratum::new(a.to_vec()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(stratum_dim(&s(&[2])).unwrap(), 3);
        assert_eq!(stratum_dim(&s(&[1, 1])).unwrap(), 4);
        assert_eq!(stratum_dim(&s(&[4])).unwrap(), 5);
        assert!(stratum_dim(&Stratum::torus()).is_err());
        assert_eq!(period_rank(&s(&[2])), 4);
        assert_eq!(period_rank(&s(&[1, 1])), 5);
        assert_eq!(period_rank(&Stratum::torus()), 2);
    }

    #[test]
    fn isoperiodic() {
        let d = isoperiodic_codim(&s(&[1, 1])).unwrap();
        assert_eq!(d, IsoperiodicData { codim: 4, leaf_dim: 0, rel_rank: 1 });
        assert_eq!(isoperiodic_codim(&s(&[2])).unwrap().rel_rank, 0);
        assert_eq!(isoperiodic_codim(&s(&[1, 1, 1, 1])).unwrap().rel_rank, 3);
    }

    #[test]
    fn genus_two_and_three() {
        let g2 = enumerate_strata(2).unwrap();
        assert_eq!(g2.iter().map(|e| e.stratum.alpha().to_vec()).collect::<Vec<_>>(), vec![vec![2], vec![1, 1]]);
        assert_eq!(g2.iter().map(|e| e.dim).collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(enumerate_strata(3).unwrap().len(), 5);
        assert!(enumerate_strata(1).is_err());
    }

    #[test]
    fn rank_degree_substitution() {
        assert!(RankDegreeSolution::satisfies(1, 1, 5));
        assert!(!RankDegreeSolution::satisfies(2, 1, 0));
        let sols = solve_rank_degree(10, 10, 10).unwrap();
        assert_eq!(sols.len(), 12);
        assert!(solve_rank_degree(0, 1, 1).is_err());
    }

    #[test]
    fn cm_examples() {
        let one = |n, dd, k| CmFactor { multiplicity: n, division_degree: dd, center_degree: k };
        let ell = CmFactorData { factors: vec![one(1, 1, 2)], dim: 1 };
        assert_eq!(cm_reduced_degree(&ell).unwrap(), (2, true));
        let cyclic = CmFactorData { factors: vec![one(1, 1, 6)], dim: 3 };
        assert_eq!(cm_reduced_degree(&cyclic).unwrap(), (6, true));
        let generic = CmFactorData { factors: vec![one(1, 1, 1)], dim: 2 };
        assert_eq!(cm_reduced_degree(&generic).unwrap(), (1, false));
        let quaternion = CmFactorData { factors: vec![one(1, 4, 1)], dim: 1 };
        assert_eq!(cm_reduced_degree(&quaternion).unwrap(), (2, true));
        assert!(cm_reduced_degree(&CmFactorData { factors: vec![one(1, 2, 1)], dim: 1 }).is_err());
        assert!(cm_reduced_degree(&CmFactorData { factors: vec![one(1, 1, 4)], dim: 1 }).is_err());
    }
}
