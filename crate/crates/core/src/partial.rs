//! Partial DSOP synthesis: points of `sop_d` are covered exactly once,
//! points of `sop_s` any number of times.

use crate::cover::{Cover, FunctionSpec};
use crate::cube::Cube;
use crate::engine::{self, BreakOutcome, DsopConfig, DsopRun, Problem, Rule};
use crate::error::{Error, Result};

/// Two point-disjoint functions over the same variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSpec {
    sop_d: FunctionSpec,
    sop_s: FunctionSpec,
}

impl PartialSpec {
    /// Fails if the two parts share a point or a variable count differs.
    pub fn new(sop_d: FunctionSpec, sop_s: FunctionSpec) -> Result<PartialSpec> {
        if sop_d.n() != sop_s.n() {
            return Err(Error::DimensionMismatch {
                left: sop_d.n(),
                right: sop_s.n(),
            });
        }
        let shared = sop_s.care_cover();
        if let Some(c) = sop_d.care_cover().iter().find(|c| shared.touches(c)) {
            return Err(Error::OverlappingSpec(c.to_string()));
        }
        Ok(PartialSpec { sop_d, sop_s })
    }

    pub fn n(&self) -> usize {
        self.sop_d.n()
    }

    /// Points to cover exactly once (on) or at most once (dc).
    pub fn sop_d(&self) -> &FunctionSpec {
        &self.sop_d
    }

    /// Points that may be covered any number of times.
    pub fn sop_s(&self) -> &FunctionSpec {
        &self.sop_s
    }

    fn rule(&self) -> Rule {
        Rule::Partial {
            shared: self.sop_s.care_cover(),
            exact: self.sop_d.care_cover(),
            shared_dc: self.sop_s.dc.clone(),
        }
    }
}

/// Splits `q` after `p` was selected.
///
/// With `pi = q ∩ p`: if `pi` lies inside `sop_s` the cube is kept whole.
/// Otherwise it is replaced by `q # p`, and when `pi` mixes both parts the
/// `sop_s` points of `pi` are returned as reusable don't cares.
pub fn partial_break(q: &Cube, p: &Cube, spec: &PartialSpec) -> Result<BreakOutcome> {
    if q.intersect(p)?.is_none() {
        return Err(Error::contract(format!("partial_break on disjoint cubes {q} and {p}")));
    }
    if q.n() != spec.n() {
        return Err(Error::DimensionMismatch {
            left: spec.n(),
            right: q.n(),
        });
    }
    Ok(spec.rule().split(q, p))
}

pub fn partial_dsop(spec: &PartialSpec, cfg: &DsopConfig) -> Result<Cover> {
    Ok(partial_dsop_run(spec, cfg)?.cover)
}

/// [`partial_dsop`] plus per-pass bookkeeping.
pub fn partial_dsop_run(spec: &PartialSpec, cfg: &DsopConfig) -> Result<DsopRun> {
    let on = spec.sop_d.on.union(&spec.sop_s.on)?;
    engine::run(
        Problem {
            first_dc: spec.sop_d.dc.union(&spec.sop_s.dc)?,
            original_on: on.clone(),
            on,
            rule: spec.rule(),
        },
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{SortPolicy, Variant};

    fn c(s: &str) -> Cube {
        s.parse().unwrap()
    }

    fn cv(rows: &[&str]) -> Cover {
        Cover::parse(4, rows).unwrap()
    }

    fn mixed_parts() -> PartialSpec {
        PartialSpec::new(
            FunctionSpec::completely_specified(cv(&["011-", "1101"])),
            FunctionSpec::completely_specified(cv(&["0-0-", "1-1-"])),
        )
        .unwrap()
    }

    #[test]
    fn break_mixed_intersection() {
        let out = partial_break(&c("-1-1"), &c("01--"), &mixed_parts()).unwrap();
        assert_eq!(out.fragments(), &[c("11-1")]);
        assert_eq!(out.reusable(), &[c("0101")]);
    }

    #[test]
    fn break_inside_shared_part_keeps_cube() {
        let out = partial_break(&c("0-0-"), &c("01--"), &mixed_parts()).unwrap();
        assert!(out.is_kept());
        assert!(out.fragments().is_empty() && out.reusable().is_empty());
    }

    #[test]
    fn break_contained_in_exact_part() {
        // q ⊆ p, q ∩ p ⊆ sop_d: nothing of q survives
        let out = partial_break(&c("0110"), &c("01--"), &mixed_parts()).unwrap();
        assert!(!out.is_kept());
        assert!(out.fragments().is_empty() && out.reusable().is_empty());
    }

    #[test]
    fn overlapping_parts_rejected() {
        let err = PartialSpec::new(
            FunctionSpec::completely_specified(cv(&["01--"])),
            FunctionSpec::completely_specified(cv(&["0-0-"])),
        );
        assert!(matches!(err, Err(Error::OverlappingSpec(_))));
    }

    #[test]
    fn mixed_parts_variant_one() {
        let cfg = DsopConfig::new(Variant::Dsop1, SortPolicy::DimensionWeight);
        let run = partial_dsop_run(&mixed_parts(), &cfg).unwrap();
        let mut got: Vec<String> = run.cover.iter().map(ToString::to_string).collect();
        got.sort();
        assert_eq!(got, ["0-0-", "01--", "1-1-", "11-1"]);
        assert_eq!(run.passes.len(), 2);
    }
}
