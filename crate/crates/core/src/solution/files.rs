use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Solution;
use crate::arith::MultFn;
use crate::endo::EndoFamily;
use crate::error::Result;
use crate::poly::Poly;

/// Seed file, and the solution descriptor written by `build`, which is the
/// same document with a precomputed `table` of `f_n`.
///
/// When a descriptor is loaded its table entries take precedence over the
/// values generated from the seeds, so an edited table is checked as written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub alpha: EndoFamily,
    pub u: MultFn,
    pub seeds: BTreeMap<u64, Poly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<u64, Poly>>,
}

impl SeedFile {
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The seeded solution, with any table entries layered on top.
    pub fn to_solution(&self) -> Result<Solution> {
        let sol = Solution::from_seeds(self.alpha.clone(), self.u.clone(), self.seeds.clone())?;
        Ok(match &self.table {
            Some(table) => {
                // Entries equal to the generated values are not overrides.
                let mut overrides = BTreeMap::new();
                for (&n, f) in table {
                    if n == 0 || sol.eval(n)? != *f {
                        overrides.insert(n, f.clone());
                    }
                }
                if overrides.is_empty() {
                    sol
                } else {
                    sol.with_overrides(overrides)
                }
            }
            None => sol,
        })
    }

    /// Echo of the inputs plus `f_1..=f_precompute`.
    pub fn descriptor(&self, precompute: u64) -> Result<SeedFile> {
        let sol = Solution::from_seeds(self.alpha.clone(), self.u.clone(), self.seeds.clone())?;
        let table = (1..=precompute)
            .map(|n| Ok((n, sol.eval(n)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(SeedFile {
            alpha: self.alpha.clone(),
            u: self.u.clone(),
            seeds: self.seeds.clone(),
            table: Some(table),
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("seed files always serialize")
    }
}
