//! Aggregate figures of merit for a mapping.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping::MajoranaMapping;
use crate::topology::{excitation_cost, HardwareGraph};
use crate::verify::classify_nto;

/// Exhaustive double excitations are allowed up to this many modes.
pub const EXHAUSTIVE_DOUBLE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub double_samples: usize,
    pub seed: u64,
    pub exhaustive_doubles: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            double_samples: 200,
            seed: 0,
            exhaustive_doubles: false,
        }
    }
}

/// Excitation cost is the largest Steiner overhead among its Majorana products.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwapSummary {
    pub single_count: usize,
    pub single_max: usize,
    pub single_mean: f64,
    pub double_count: usize,
    pub double_max: usize,
    pub double_mean: f64,
    pub double_exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MappingReport {
    pub n_qubits: usize,
    pub weights: Vec<usize>,
    pub weight_min: usize,
    pub weight_mean: f64,
    pub weight_max: usize,
    pub deloc: Vec<usize>,
    pub deloc_mean: f64,
    /// Only defined for tree-generated mappings.
    pub h_z: Option<usize>,
    pub nto_class: usize,
    /// Tree edges absent from the hardware graph.
    pub virtual_edges: Option<usize>,
    pub swap: Option<SwapSummary>,
}

fn mean(xs: &[usize]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<usize>() as f64 / xs.len() as f64
    }
}

fn swap_summary(m: &MajoranaMapping, g: &HardwareGraph, opts: &ReportOptions) -> Result<SwapSummary> {
    let n = m.n_modes();
    let mut singles = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            singles.push(excitation_cost(m, g, &[i, j])?.max_overhead);
        }
    }
    let quads: Vec<Vec<usize>> = if n < 4 {
        Vec::new()
    } else if opts.exhaustive_doubles {
        if n > EXHAUSTIVE_DOUBLE_LIMIT {
            return Err(Error::TooLarge { n, limit: EXHAUSTIVE_DOUBLE_LIMIT });
        }
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        out.push(vec![a, b, c, d]);
                    }
                }
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..opts.double_samples)
            .map(|_| {
                let mut q = sample(&mut rng, n, 4).into_vec();
                q.sort_unstable();
                q
            })
            .collect()
    };
    let doubles = quads
        .iter()
        .map(|q| excitation_cost(m, g, q).map(|c| c.max_overhead))
        .collect::<Result<Vec<_>>>()?;
    Ok(SwapSummary {
        single_count: singles.len(),
        single_max: singles.iter().copied().max().unwrap_or(0),
        single_mean: mean(&singles),
        double_count: doubles.len(),
        double_max: doubles.iter().copied().max().unwrap_or(0),
        double_mean: mean(&doubles),
        double_exhaustive: opts.exhaustive_doubles,
    })
}

pub fn report(m: &MajoranaMapping, g: Option<&HardwareGraph>, opts: &ReportOptions) -> Result<MappingReport> {
    if let Some(g) = g {
        if g.n_qubits() != m.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: m.n_qubits(),
                found: g.n_qubits(),
            });
        }
    }
    let weights: Vec<usize> = m.majoranas().iter().map(|s| s.weight()).collect();
    let deloc = m.delocalisations();
    let tree = m.source_tree();
    let virtual_edges = match (tree, g) {
        (Some(t), Some(g)) => Some(t.links().iter().filter(|l| !g.has_edge(l.parent, l.child)).count()),
        _ => None,
    };
    Ok(MappingReport {
        n_qubits: m.n_qubits(),
        weight_min: weights.iter().copied().min().unwrap_or(0),
        weight_mean: mean(&weights),
        weight_max: weights.iter().copied().max().unwrap_or(0),
        weights,
        deloc_mean: mean(&deloc),
        deloc,
        h_z: tree.map(|t| t.h_z()),
        nto_class: classify_nto(m),
        virtual_edges,
        swap: g.map(|g| swap_summary(m, g, opts)).transpose()?,
    })
}

impl MappingReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(out, "qubits          {}", self.n_qubits);
        let _ = writeln!(
            out,
            "weight          min {}  mean {:.3}  max {}",
            self.weight_min, self.weight_mean, self.weight_max
        );
        let _ = writeln!(out, "mean deloc      {:.4}", self.deloc_mean);
        let _ = writeln!(out, "h_z             {}", opt(self.h_z));
        let _ = writeln!(out, "nto class       {}", self.nto_class);
        let _ = writeln!(out, "virtual edges   {}", opt(self.virtual_edges));
        if let Some(s) = &self.swap {
            let _ = writeln!(
                out,
                "single swaps    max {}  mean {:.3}  ({} pairs)",
                s.single_max, s.single_mean, s.single_count
            );
            let _ = writeln!(
                out,
                "double swaps    max {}  mean {:.3}  ({} {})",
                s.double_max,
                s.double_mean,
                s.double_count,
                if s.double_exhaustive { "all" } else { "sampled" }
            );
        }
        out.push_str("\nmode  deloc\n");
        for (j, d) in self.deloc.iter().enumerate() {
            let _ = writeln!(out, "{j:<5} {d}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::{classic_tree, exotic_3nto, MappingKind};
    use crate::mapping::{pair_modes, PairingOptions};
    use crate::topology::linear;

    #[test]
    fn jw_eight() {
        let m = pair_modes(&classic_tree(MappingKind::JordanWigner, 8).unwrap(), None, PairingOptions::default()).unwrap();
        let g = linear(8).unwrap();
        let r = report(&m, Some(&g), &ReportOptions::default()).unwrap();
        assert_eq!(r.h_z, Some(8));
        assert_eq!(r.deloc_mean, 0.0);
        assert_eq!(r.weight_max, 8);
        assert_eq!(r.virtual_edges, Some(0));
        assert!(r.to_text().contains("h_z             8"));
        let s = r.swap.unwrap();
        assert_eq!((s.single_count, s.single_max), (28, 0));
        assert_eq!(s.double_count, 200);
    }

    #[test]
    fn parity_hz_is_one() {
        let m = pair_modes(&classic_tree(MappingKind::Parity, 6).unwrap(), None, PairingOptions::default()).unwrap();
        let r = report(&m, None, &ReportOptions::default()).unwrap();
        assert_eq!(r.h_z, Some(1));
        assert!(r.swap.is_none());
    }

    #[test]
    fn raw_mapping_has_no_tree_fields() {
        let r = report(&exotic_3nto(), None, &ReportOptions::default()).unwrap();
        assert_eq!(r.h_z, None);
        assert_eq!(r.nto_class, 3);
    }

    #[test]
    fn size_checks() {
        let m = pair_modes(&classic_tree(MappingKind::Jkmn, 20).unwrap(), None, PairingOptions::default()).unwrap();
        assert!(report(&m, Some(&linear(5).unwrap()), &ReportOptions::default()).is_err());
        let opts = ReportOptions { exhaustive_doubles: true, ..Default::default() };
        let g = crate::topology::complete(20).unwrap();
        assert!(matches!(report(&m, Some(&g), &opts), Err(Error::TooLarge { .. })));
    }
}
