//! Positional cube notation.
//!
//! A [`Cube`] is a product term over `n` variables. Each variable holds a
//! [`Trit`]: bound to `0`, bound to `1`, or free. Internally every variable
//! owns one bit in each of two bit-planes, `zeros` ("value 0 allowed") and
//! `ones` ("value 1 allowed"), so intersection and containment are plain
//! word-wise AND / subset tests.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

type Plane = SmallVec<[u64; 1]>;

/// Value of one variable inside a cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trit {
    Zero,
    One,
    Free,
}

impl Trit {
    pub fn as_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::One => '1',
            Trit::Free => '-',
        }
    }

    /// Accepts `0`, `1`, `-` and the espresso aliases `2` and `~` for a free position.
    pub fn from_char(c: char) -> Option<Trit> {
        match c {
            '0' => Some(Trit::Zero),
            '1' => Some(Trit::One),
            '-' | '2' | '~' => Some(Trit::Free),
            _ => None,
        }
    }

    pub(crate) fn complement(self) -> Trit {
        match self {
            Trit::Zero => Trit::One,
            Trit::One => Trit::Zero,
            Trit::Free => Trit::Free,
        }
    }

    // ascending trit-string order: '-' < '0' < '1'
    fn rank(self) -> u8 {
        match self {
            Trit::Free => 0,
            Trit::Zero => 1,
            Trit::One => 2,
        }
    }
}

/// An immutable product term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cube {
    n: usize,
    zeros: Plane,
    ones: Plane,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

fn tail_mask(n: usize, word: usize) -> u64 {
    let lo = word * 64;
    if n >= lo + 64 {
        u64::MAX
    } else if n <= lo {
        0
    } else {
        (1u64 << (n - lo)) - 1
    }
}

impl Cube {
    /// The cube with every variable free.
    pub fn universe(n: usize) -> Cube {
        let w = words_for(n);
        let mut zeros: Plane = smallvec![0; w];
        for (i, z) in zeros.iter_mut().enumerate() {
            *z = tail_mask(n, i);
        }
        Cube {
            n,
            ones: zeros.clone(),
            zeros,
        }
    }

    /// The minterm whose variable `i` takes bit `i` of `bits` (`n <= 64`).
    pub fn minterm(n: usize, bits: u64) -> Cube {
        assert!(n <= 64, "minterm indices are limited to 64 variables");
        let mask = tail_mask(n, 0);
        Cube {
            n,
            zeros: smallvec![!bits & mask],
            ones: smallvec![bits & mask],
        }
    }

    pub fn from_trits(trits: &[Trit]) -> Cube {
        let mut cube = Cube::universe(trits.len());
        for (i, &t) in trits.iter().enumerate() {
            cube.set(i, t);
        }
        cube
    }

    fn set(&mut self, i: usize, t: Trit) {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let (z, o) = match t {
            Trit::Zero => (true, false),
            Trit::One => (false, true),
            Trit::Free => (true, true),
        };
        if z {
            self.zeros[w] |= b;
        } else {
            self.zeros[w] &= !b;
        }
        if o {
            self.ones[w] |= b;
        } else {
            self.ones[w] &= !b;
        }
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize) -> Trit {
        assert!(i < self.n, "variable {i} out of range for {} variables", self.n);
        let (w, b) = (i / 64, 1u64 << (i % 64));
        match (self.zeros[w] & b != 0, self.ones[w] & b != 0) {
            (true, true) => Trit::Free,
            (true, false) => Trit::Zero,
            (false, true) => Trit::One,
            (false, false) => unreachable!("empty position in a cube"),
        }
    }

    /// Copy of `self` with variable `i` replaced.
    pub fn with(&self, i: usize, t: Trit) -> Cube {
        let mut c = self.clone();
        c.set(i, t);
        c
    }

    pub fn trits(&self) -> impl Iterator<Item = Trit> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    fn free_words(&self) -> impl Iterator<Item = u64> + '_ {
        self.zeros.iter().zip(&self.ones).map(|(z, o)| z & o)
    }

    /// Mask of bound variables, one word at a time.
    fn bound_words(&self) -> impl Iterator<Item = u64> + '_ {
        self.free_words()
            .enumerate()
            .map(|(i, f)| !f & tail_mask(self.n, i))
    }

    pub fn literal_count(&self) -> usize {
        self.bound_words().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dimension(&self) -> usize {
        self.n - self.literal_count()
    }

    pub fn is_minterm(&self) -> bool {
        self.literal_count() == self.n
    }

    pub fn is_universe(&self) -> bool {
        self.literal_count() == 0
    }

    fn check(&self, other: &Cube) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Intersection, `None` when some variable is bound to opposite values.
    pub fn intersect(&self, other: &Cube) -> Result<Option<Cube>> {
        self.check(other)?;
        Ok(self.meet(other))
    }

    /// True iff every minterm of `other` lies in `self`.
    pub fn contains(&self, other: &Cube) -> Result<bool> {
        self.check(other)?;
        Ok(self.includes(other))
    }

    /// Number of variables bound to the same value in both cubes.
    pub fn common_literal_count(&self, other: &Cube) -> Result<usize> {
        self.check(other)?;
        Ok(self.shared_literals(other))
    }

    /// Splits `self \ other` into pairwise-disjoint cubes.
    ///
    /// With `r = self ∩ other`, variables free in `self` but bound in `r`
    /// are scanned in ascending index order. The `j`-th fragment fixes the
    /// earlier such variables to their value in `r` and the `j`-th one to
    /// its complement, so exactly `literal_count(r) - literal_count(self)`
    /// fragments are produced.
    pub fn disjoint_sharp(&self, other: &Cube) -> Result<Vec<Cube>> {
        self.check(other)?;
        let r = self
            .meet(other)
            .ok_or_else(|| Error::contract(format!("disjoint_sharp on disjoint cubes {self} and {other}")))?;
        Ok(self.sharp_by(&r))
    }

    /// `disjoint_sharp` against an already-computed `r ⊆ self`.
    pub(crate) fn sharp_by(&self, r: &Cube) -> Vec<Cube> {
        let mut out = Vec::with_capacity(r.literal_count() - self.literal_count());
        let mut prefix = self.clone();
        for i in 0..self.n {
            if self.get(i) != Trit::Free {
                continue;
            }
            let v = r.get(i);
            if v == Trit::Free {
                continue;
            }
            out.push(prefix.with(i, v.complement()));
            prefix.set(i, v);
        }
        out
    }

    pub(crate) fn meet(&self, other: &Cube) -> Option<Cube> {
        debug_assert_eq!(self.n, other.n);
        let zeros: Plane = self.zeros.iter().zip(&other.zeros).map(|(a, b)| a & b).collect();
        let ones: Plane = self.ones.iter().zip(&other.ones).map(|(a, b)| a & b).collect();
        let empty = zeros
            .iter()
            .zip(&ones)
            .enumerate()
            .any(|(i, (z, o))| !(z | o) & tail_mask(self.n, i) != 0);
        (!empty).then_some(Cube {
            n: self.n,
            zeros,
            ones,
        })
    }

    pub(crate) fn overlaps(&self, other: &Cube) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.zeros
            .iter()
            .zip(&self.ones)
            .zip(other.zeros.iter().zip(&other.ones))
            .enumerate()
            .all(|(i, ((z1, o1), (z2, o2)))| !((z1 & z2) | (o1 & o2)) & tail_mask(self.n, i) == 0)
    }

    pub(crate) fn includes(&self, other: &Cube) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.zeros.iter().zip(&other.zeros).all(|(a, b)| b & !a == 0)
            && self.ones.iter().zip(&other.ones).all(|(a, b)| b & !a == 0)
    }

    pub(crate) fn shared_literals(&self, other: &Cube) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.zeros
            .iter()
            .zip(&self.ones)
            .zip(other.zeros.iter().zip(&other.ones))
            .enumerate()
            .map(|(i, ((z1, o1), (z2, o2)))| {
                let mask = tail_mask(self.n, i);
                let zero_lits = z1 & !o1 & z2 & !o2;
                let one_lits = o1 & !z1 & o2 & !z2;
                ((zero_lits | one_lits) & mask).count_ones() as usize
            })
            .sum()
    }

    /// `self` with every variable bound in `p` made free.
    pub(crate) fn free_where_bound(&self, p: &Cube) -> Cube {
        let mut c = self.clone();
        for (i, b) in p.bound_words().enumerate() {
            c.zeros[i] |= b;
            c.ones[i] |= b;
        }
        c
    }

    /// True iff minterm `bits` (variable `i` = bit `i`) lies in the cube.
    pub fn contains_minterm(&self, bits: u64) -> bool {
        debug_assert!(self.n <= 64);
        let mask = tail_mask(self.n, 0);
        let bits = bits & mask;
        (bits & !self.ones[0]) == 0 && (!bits & mask & !self.zeros[0]) == 0
    }

    /// Minterm indices of the cube; only defined for `n <= 64`.
    pub fn minterms(&self) -> Minterms {
        assert!(self.n <= 64, "minterm enumeration needs n <= 64");
        let free = self.zeros[0] & self.ones[0] & tail_mask(self.n, 0);
        let base = self.ones[0] & !free & tail_mask(self.n, 0);
        Minterms {
            base,
            free,
            sub: 0,
            done: false,
        }
    }

    /// Number of minterms, saturating at `u128::MAX`.
    pub(crate) fn point_count(&self) -> u128 {
        let d = self.dimension();
        if d >= 128 {
            u128::MAX
        } else {
            1u128 << d
        }
    }
}

/// Iterator over the minterms of a cube (subset enumeration of the free mask).
pub struct Minterms {
    base: u64,
    free: u64,
    sub: u64,
    done: bool,
}

impl Iterator for Minterms {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let out = self.base | self.sub;
        self.sub = self.sub.wrapping_sub(self.free) & self.free;
        if self.sub == 0 {
            self.done = true;
        }
        Some(out)
    }
}

impl Ord for Cube {
    fn cmp(&self, other: &Self) -> Ordering {
        self.trits()
            .map(Trit::rank)
            .cmp(other.trits().map(Trit::rank))
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.trits() {
            write!(f, "{}", t.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cube({self})")
    }
}

impl FromStr for Cube {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cube> {
        let trits = s
            .chars()
            .enumerate()
            .map(|(position, c)| Trit::from_char(c).ok_or(Error::InvalidTrit { found: c, position }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cube::from_trits(&trits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cube {
        s.parse().unwrap()
    }

    fn points(cube: &Cube) -> Vec<u64> {
        let mut v: Vec<_> = cube.minterms().collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(c("01-1").to_string(), "01-1");
        assert_eq!(c("2~01").to_string(), "--01");
        assert!(matches!(
            "01x".parse::<Cube>(),
            Err(Error::InvalidTrit { found: 'x', position: 2 })
        ));
    }

    #[test]
    fn literals_and_dimension() {
        let q = c("0-0-");
        assert_eq!(q.literal_count(), 2);
        assert_eq!(q.dimension(), 2);
        assert!(c("0101").is_minterm());
        assert!(c("----").is_universe());
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(c("-1-1").intersect(&c("01--")).unwrap(), Some(c("01-1")));
        assert_eq!(c("01-1").intersect(&c("1-1-")).unwrap(), None);
        let p = c("0-1-");
        assert_eq!(p.intersect(&p).unwrap(), Some(p.clone()));
        assert!(matches!(
            c("01").intersect(&c("011")),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn contains_examples() {
        assert!(c("01--").contains(&c("01-1")).unwrap());
        assert!(!c("01-1").contains(&c("01--")).unwrap());
        assert!(c("----").contains(&c("1010")).unwrap());
    }

    #[test]
    fn common_literals() {
        assert_eq!(c("0-0-").common_literal_count(&c("01--")).unwrap(), 1);
        assert_eq!(c("0-0-").common_literal_count(&c("-1-1")).unwrap(), 0);
        assert_eq!(c("1-01").common_literal_count(&c("1-01")).unwrap(), 3);
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(c("0-0-").disjoint_sharp(&c("-1-1")).unwrap(), vec![c("000-"), c("0100")]);
        assert_eq!(c("-1-1").disjoint_sharp(&c("01--")).unwrap(), vec![c("11-1")]);
        assert!(c("01-1").disjoint_sharp(&c("01--")).unwrap().is_empty());
        assert!(matches!(
            c("1---").disjoint_sharp(&c("0---")),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn sharp_worked_instance_six_vars() {
        // k1 = 5, k2 = 3, c = 2: three fragments of dimensions 0, 1, 2.
        let p1 = c("11011-");
        let p2 = c("11---1");
        assert_eq!(p1.common_literal_count(&p2).unwrap(), 2);
        let frags = p2.disjoint_sharp(&p1).unwrap();
        let mut dims: Vec<_> = frags.iter().map(Cube::dimension).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![0, 1, 2]);
    }

    #[test]
    fn minterm_iteration() {
        assert_eq!(points(&c("01-1")), vec![0b1010, 0b1110]);
        assert_eq!(points(&c("--")).len(), 4);
        assert_eq!(points(&c("101")), vec![0b101]);
        let m = Cube::minterm(4, 0b0110);
        assert_eq!(m.to_string(), "0110");
        assert!(c("-11-").contains_minterm(0b0110));
        assert!(!c("-11-").contains_minterm(0b0100));
    }

    #[test]
    fn trit_string_order() {
        let mut v = [c("1-"), c("0-"), c("-1"), c("--")];
        v.sort();
        let s: Vec<_> = v.iter().map(ToString::to_string).collect();
        assert_eq!(s, ["--", "-1", "0-", "1-"]);
    }

    #[test]
    fn wide_cubes_cross_word_boundaries() {
        let mut a = Cube::universe(130);
        a = a.with(3, Trit::One).with(70, Trit::Zero).with(129, Trit::One);
        let b = Cube::universe(130).with(70, Trit::One);
        assert_eq!(a.literal_count(), 3);
        assert!(a.meet(&b).is_none());
        let b = Cube::universe(130).with(100, Trit::Zero);
        let r = a.meet(&b).unwrap();
        assert_eq!(r.literal_count(), 4);
        assert_eq!(a.sharp_by(&r), vec![a.with(100, Trit::One)]);
        assert!(Cube::universe(130).includes(&r));
    }
}
