//! Covers (ordered lists of cubes) and the cover-level algebra built on
//! them: absorption, Shannon cofactor, tautology and cube containment.

use std::fmt;

use crate::cube::{Cube, Trit};
use crate::error::{Error, Result};

/// Default variable cap for exhaustive minterm enumeration.
pub const DEFAULT_ENUM_LIMIT: usize = 24;

/// An ordered set-of-products over a shared variable count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    n: usize,
    cubes: Vec<Cube>,
}

impl Cover {
    pub fn new(n: usize) -> Cover {
        Cover {
            n,
            cubes: Vec::new(),
        }
    }

    pub fn from_cubes(n: usize, cubes: impl IntoIterator<Item = Cube>) -> Result<Cover> {
        let mut cover = Cover::new(n);
        for c in cubes {
            cover.push(c)?;
        }
        Ok(cover)
    }

    /// Builds a cover from trit strings. All strings must share one length.
    pub fn parse<S: AsRef<str>>(n: usize, rows: &[S]) -> Result<Cover> {
        let cubes = rows
            .iter()
            .map(|s| s.as_ref().parse::<Cube>())
            .collect::<Result<Vec<_>>>()?;
        Cover::from_cubes(n, cubes)
    }

    pub(crate) fn from_vec_unchecked(n: usize, cubes: Vec<Cube>) -> Cover {
        debug_assert!(cubes.iter().all(|c| c.n() == n));
        Cover { n, cubes }
    }

    pub fn push(&mut self, cube: Cube) -> Result<()> {
        if cube.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: cube.n(),
            });
        }
        self.cubes.push(cube);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cube> {
        self.cubes.iter()
    }

    pub fn into_cubes(self) -> Vec<Cube> {
        self.cubes
    }

    /// Concatenation of two covers over the same variables.
    pub fn union(&self, other: &Cover) -> Result<Cover> {
        self.check(other.n)?;
        let mut cubes = self.cubes.clone();
        cubes.extend(other.cubes.iter().cloned());
        Ok(Cover { n: self.n, cubes })
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.n, right: n })
        }
    }

    /// Drops duplicates and cubes contained in another cube, keeping the
    /// relative order of the survivors.
    #[allow(clippy::needless_range_loop)]
    pub fn normalize(&self) -> Cover {
        let mut keep = vec![true; self.cubes.len()];
        for i in 0..self.cubes.len() {
            if !keep[i] {
                continue;
            }
            for j in 0..self.cubes.len() {
                if i == j || !keep[j] {
                    continue;
                }
                // a duplicate survives only at its first position
                let (a, b) = (&self.cubes[i], &self.cubes[j]);
                if a.includes(b) && (a != b || i < j) {
                    keep[j] = false;
                }
            }
        }
        let cubes = self
            .cubes
            .iter()
            .zip(keep)
            .filter(|&(_c, k)| k).map(|(c, _k)| c.clone())
            .collect();
        Cover { n: self.n, cubes }
    }

    /// Restriction of the cover to the subspace `p`, expressed over the free
    /// variables of `p` (bound positions become free).
    pub fn cofactor(&self, p: &Cube) -> Result<Cover> {
        self.check(p.n())?;
        Ok(self.cofactor_unchecked(p))
    }

    fn cofactor_unchecked(&self, p: &Cube) -> Cover {
        let cubes = self
            .cubes
            .iter()
            .filter(|c| c.overlaps(p))
            .map(|c| c.free_where_bound(p))
            .collect();
        Cover { n: self.n, cubes }
    }

    /// True iff the cubes jointly cover all of `{0,1}^n`.
    pub fn is_tautology(&self) -> bool {
        tautology(&self.cubes, self.n)
    }

    /// True iff every minterm of `p` is covered by some cube of the cover.
    pub fn contains_cube(&self, p: &Cube) -> Result<bool> {
        self.check(p.n())?;
        Ok(self.covers(p))
    }

    pub(crate) fn covers(&self, p: &Cube) -> bool {
        // single-cube containment settles most queries without recursion
        if self.cubes.iter().any(|c| c.includes(p)) {
            return true;
        }
        self.cofactor_unchecked(p).is_tautology()
    }

    /// True iff some cube of the cover intersects `p`.
    pub fn intersects_cube(&self, p: &Cube) -> Result<bool> {
        self.check(p.n())?;
        Ok(self.touches(p))
    }

    pub(crate) fn touches(&self, p: &Cube) -> bool {
        self.cubes.iter().any(|c| c.overlaps(p))
    }

    /// Per-minterm cover multiplicity for `n <= limit`.
    pub fn minterm_counts(&self, limit: usize) -> Result<MintermCounts> {
        if self.n > limit || self.n > 32 {
            return Err(Error::Capacity {
                n: self.n,
                limit: limit.min(32),
            });
        }
        let mut counts = vec![0u8; 1usize << self.n];
        for c in &self.cubes {
            for m in c.minterms() {
                let slot = &mut counts[m as usize];
                *slot = slot.saturating_add(1);
            }
        }
        Ok(MintermCounts { n: self.n, counts })
    }

    /// True iff no two cubes intersect.
    pub fn is_pairwise_disjoint(&self) -> bool {
        self.overlapping_pairs().next().is_none()
    }

    pub(crate) fn overlapping_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cubes = &self.cubes;
        (0..cubes.len()).flat_map(move |i| {
            (i + 1..cubes.len()).filter_map(move |j| cubes[i].overlaps(&cubes[j]).then_some((i, j)))
        })
    }
}

fn tautology(cubes: &[Cube], n: usize) -> bool {
    if cubes.is_empty() {
        return false;
    }
    if cubes.iter().any(Cube::is_universe) {
        return true;
    }
    // not enough points to fill the space
    if n < 127 {
        let total: u128 = cubes.iter().map(Cube::point_count).fold(0, u128::saturating_add);
        if total < 1u128 << n {
            return false;
        }
    }
    let Some(var) = split_variable(cubes, n) else {
        // unate cover without a universe row
        return false;
    };
    [Trit::Zero, Trit::One].into_iter().all(|value| {
        let branch: Vec<Cube> = cubes
            .iter()
            .filter(|c| c.get(var) != value.complement())
            .map(|c| c.with(var, Trit::Free))
            .collect();
        tautology(&branch, n)
    })
}

/// The binate variable bound in the most cubes, ties to the lowest index;
/// `None` when the cover is unate.
fn split_variable(cubes: &[Cube], n: usize) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for var in 0..n {
        let (mut zeros, mut ones) = (0usize, 0usize);
        for c in cubes {
            match c.get(var) {
                Trit::Zero => zeros += 1,
                Trit::One => ones += 1,
                Trit::Free => {}
            }
        }
        if zeros > 0 && ones > 0 && best.is_none_or(|(_, b)| zeros + ones > b) {
            best = Some((var, zeros + ones));
        }
    }
    best.map(|(v, _)| v)
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.cubes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cover[{}]{self}", self.n)
    }
}

impl<'a> IntoIterator for &'a Cover {
    type Item = &'a Cube;
    type IntoIter = std::slice::Iter<'a, Cube>;

    fn into_iter(self) -> Self::IntoIter {
        self.cubes.iter()
    }
}

/// Dense per-minterm multiplicities, saturating at 255.
#[derive(Clone, Debug)]
pub struct MintermCounts {
    n: usize,
    counts: Vec<u8>,
}

impl MintermCounts {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, minterm: u64) -> u32 {
        self.counts.get(minterm as usize).copied().unwrap_or(0) as u32
    }

    /// `(minterm, count)` for every covered minterm, in index order.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(m, &c)| (m as u64, c as u32))
    }

    pub(crate) fn as_slice(&self) -> &[u8] {
        &self.counts
    }
}

/// An incompletely specified single-output function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpec {
    pub on: Cover,
    pub dc: Cover,
}

impl FunctionSpec {
    /// Checks that `on` and `dc` share `n` and have no common point.
    pub fn new(on: Cover, dc: Cover) -> Result<FunctionSpec> {
        on.check(dc.n)?;
        for a in &on {
            if dc.touches(a) {
                return Err(Error::OverlappingSpec(a.to_string()));
            }
        }
        Ok(FunctionSpec { on, dc })
    }

    pub fn completely_specified(on: Cover) -> FunctionSpec {
        let n = on.n;
        FunctionSpec { on, dc: Cover::new(n) }
    }

    /// Like [`FunctionSpec::new`], but points in both covers become don't
    /// cares: `on` is replaced by `on \ dc`, split with disjoint sharp.
    pub fn with_dc_precedence(on: Cover, dc: Cover) -> Result<FunctionSpec> {
        on.check(dc.n)?;
        let mut rest = on.cubes;
        for d in &dc.cubes {
            rest = rest
                .into_iter()
                .flat_map(|c| match c.meet(d) {
                    Some(r) => c.sharp_by(&r),
                    None => vec![c],
                })
                .collect();
        }
        Ok(FunctionSpec {
            on: Cover { n: dc.n, cubes: rest },
            dc,
        })
    }

    pub fn n(&self) -> usize {
        self.on.n
    }

    /// `on ∪ dc` as one cover.
    pub fn care_cover(&self) -> Cover {
        Cover {
            n: self.on.n,
            cubes: self.on.cubes.iter().chain(&self.dc.cubes).cloned().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(rows: &[&str]) -> Cover {
        let n = rows.first().map_or(0, |r| r.len());
        Cover::parse(n, rows).unwrap()
    }

    fn c(s: &str) -> Cube {
        s.parse().unwrap()
    }

    fn brute_tautology(f: &Cover) -> bool {
        (0..1u64 << f.n()).all(|m| f.iter().any(|c| c.contains_minterm(m)))
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(cv(&["01--", "01-1"]).normalize(), cv(&["01--"]));
        assert_eq!(cv(&["01--", "01--"]).normalize(), cv(&["01--"]));
        assert!(Cover::new(4).normalize().is_empty());
        assert_eq!(
            cv(&["1-0", "0--", "1-0", "00-", "11-"]).normalize(),
            cv(&["1-0", "0--", "11-"])
        );
    }

    #[test]
    fn cofactor_examples() {
        let f = cv(&["0-0-", "01--"]);
        let g = f.cofactor(&c("010-")).unwrap();
        assert_eq!(g, cv(&["----", "----"]));
        // both cubes cover all of 010-
        assert!(c("010-").minterms().all(|m| f.iter().all(|q| q.contains_minterm(m))));
        assert!(cv(&["1---"]).cofactor(&c("01--")).unwrap().is_empty());
        assert_eq!(f.cofactor(&Cube::universe(4)).unwrap(), f);
    }

    #[test]
    fn tautology_examples() {
        assert!(cv(&["--"]).is_tautology());
        assert!(cv(&["0-", "1-"]).is_tautology());
        assert!(brute_tautology(&cv(&["0-", "1-"])));
        assert!(!cv(&["0-"]).is_tautology());
        assert!(!Cover::new(3).is_tautology());
        assert!(cv(&["0-1", "1--", "-00", "010"]).is_tautology());
    }

    #[test]
    fn cube_containment_examples() {
        let f = cv(&["0-0-", "01--"]);
        assert!(f.contains_cube(&c("010-")).unwrap());
        assert!(cv(&["0-0-"]).contains_cube(&c("0-0-")).unwrap());
        assert!(!cv(&["1---"]).contains_cube(&c("01--")).unwrap());
        assert!(cv(&["00-", "01-", "1-0", "1-1"]).contains_cube(&c("---")).unwrap());
    }

    #[test]
    fn cube_intersection_examples() {
        assert!(cv(&["01--"]).intersects_cube(&c("-1-1")).unwrap());
        assert!(!cv(&["1---"]).intersects_cube(&c("01--")).unwrap());
        assert!(!Cover::new(4).intersects_cube(&c("01--")).unwrap());
    }

    #[test]
    fn minterm_count_examples() {
        let counts = cv(&["01--", "-1-1"]).minterm_counts(24).unwrap();
        // 0101 read as x1..x4 has bits x2 and x4 set
        assert_eq!(counts.get(0b1010), 2);
        assert!(Cover::new(4).minterm_counts(24).unwrap().iter_nonzero().next().is_none());
        let full = cv(&["--"]).minterm_counts(24).unwrap();
        assert!((0..4).all(|m| full.get(m) == 1));
        assert!(matches!(
            Cover::new(30).minterm_counts(24),
            Err(Error::Capacity { n: 30, limit: 24 })
        ));
    }

    #[test]
    fn spec_construction() {
        assert!(FunctionSpec::new(cv(&["01--"]), cv(&["-1-1"])).is_err());
        let f = FunctionSpec::with_dc_precedence(cv(&["01--"]), cv(&["-1-1"])).unwrap();
        assert_eq!(f.on, cv(&["01-0"]));
        assert!(FunctionSpec::new(f.on.clone(), f.dc.clone()).is_ok());
    }
}
