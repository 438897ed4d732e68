use serde::{Deserialize, Serialize};

use super::{DiagramError, FerrersDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeProfile {
    pub p: u32,
    pub height: u32,
    pub contraction: FerrersDiagram,
    pub p_monotone: bool,
    pub p_convex: bool,
    pub strictly_p_monotone: bool,
    pub initially_p_convex: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub d: usize,
    pub nu: Vec<usize>,
    pub nu_min: usize,
    pub nu_mds: usize,
    pub mds_constructible: bool,
    /// Empty for `d = 1`, where the notion is not defined.
    pub singleton: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramProfile {
    pub diagram: FerrersDiagram,
    pub size: usize,
    pub adjoint: FerrersDiagram,
    pub monotone: bool,
    pub strictly_monotone: bool,
    pub convex: bool,
    pub initially_convex: bool,
    pub primes: Vec<PrimeProfile>,
    pub distances: Vec<DistanceProfile>,
}

impl DiagramProfile {
    /// Summarises `dia` for each prime in `primes` and each `d` in `distances`.
    pub fn new(dia: &FerrersDiagram, primes: &[u32], distances: &[usize]) -> Result<Self, DiagramError> {
        let primes = primes
            .iter()
            .map(|&p| PrimeProfile {
                p,
                height: dia.p_height(p),
                contraction: dia.p_contraction(p),
                p_monotone: dia.is_p_monotone(p),
                p_convex: dia.is_p_convex(p),
                strictly_p_monotone: dia.is_strictly_p_monotone(p),
                initially_p_convex: dia.is_initially_p_convex(p),
            })
            .collect();
        let distances = distances
            .iter()
            .map(|&d| {
                Ok(DistanceProfile {
                    d,
                    nu: dia.nu_values(d)?,
                    nu_min: dia.nu_min(d)?,
                    nu_mds: dia.nu_mds(d)?,
                    mds_constructible: dia.is_mds_constructible(d)?,
                    singleton: if d >= 2 { dia.singleton_indices(d)? } else { Vec::new() },
                })
            })
            .collect::<Result<_, DiagramError>>()?;
        Ok(DiagramProfile {
            diagram: dia.clone(),
            size: dia.size(),
            adjoint: dia.adjoint(),
            monotone: dia.is_monotone(),
            strictly_monotone: dia.is_strictly_monotone(),
            convex: dia.is_convex(),
            initially_convex: dia.is_initially_convex(),
            primes,
            distances,
        })
    }
}
