//! Free-group words over signed, 1-based generator indices.
//!
//! A [`Letter`] is a nonzero `i32`: `+g` is generator `g`, `-g` its formal
//! inverse. Generator names live in [`crate::Presentation`], never in words.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(i32);

impl Letter {
    /// Panics if `gen` is zero.
    pub fn new(gen: usize, inverse: bool) -> Self {
        assert!(gen >= 1, "generator indices are 1-based");
        let g = i32::try_from(gen).expect("generator index exceeds i32");
        Letter(if inverse { -g } else { g })
    }

    pub fn pos(gen: usize) -> Self {
        Self::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Self::new(gen, true)
    }

    /// Builds a letter from its signed encoding; `None` for zero.
    pub fn from_signed(value: i32) -> Option<Self> {
        (value != 0).then_some(Letter(value))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn gen(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Same generator, positive exponent.
    pub fn positive(self) -> Self {
        Letter(self.0.abs())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.gen())
        } else {
            write!(f, "g{}", self.gen())
        }
    }
}

/// An immutable word in a free group.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from signed indices. Zero entries are rejected.
    pub fn from_signed(values: &[i32]) -> Result<Self, Error> {
        values
            .iter()
            .map(|&v| {
                Letter::from_signed(v)
                    .ok_or_else(|| Error::InvalidArgument("letter index 0 is not a generator".into()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Positive word `g_{i1} g_{i2} ...` from 1-based generator indices.
    pub fn from_gens(gens: &[usize]) -> Self {
        Word(gens.iter().map(|&g| Letter::pos(g)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.0.iter().map(|l| l.signed()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_gen(&self) -> usize {
        self.0.iter().map(|l| l.gen()).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Freely reduces, then strips matching inverse pairs from the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let reduced = self.free_reduce().0;
        let (mut lo, mut hi) = (0, reduced.len());
        while hi - lo >= 2 && reduced[lo] == reduced[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(reduced[lo..hi].to_vec())
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `by · self · by⁻¹`, freely reduced.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.invert()).free_reduce()
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Left rotation by `k` positions.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.len());
        Word(v)
    }

    /// Number of occurrences of generator `gen`, either sign.
    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen() == gen).count()
    }

    /// Exponent sum of generator `gen`.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.gen() == gen)
            .map(|l| i64::from(l.sign()))
            .sum()
    }

    /// Canonical representative of the relator class of `self`: the
    /// lexicographically least rotation of the cyclic reduction of `self` or
    /// its inverse. Two relators define the same normal closure element up to
    /// rotation and inversion iff their keys agree.
    pub fn relator_key(&self) -> Word {
        let w = self.cyclic_reduce();
        let inv = w.invert();
        let a = least_rotation(&w.0);
        let b = least_rotation(&inv.0);
        Word(a.min(b))
    }

    /// Replaces every occurrence of generator `gen` by `image` (and its
    /// inverse by `image⁻¹`). Does not reduce.
    pub fn substitute(&self, gen: usize, image: &Word) -> Word {
        let inv = image.invert();
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if l.gen() == gen {
                out.extend_from_slice(if l.is_inverse() { &inv.0 } else { &image.0 });
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Applies `f` to every letter's generator index, keeping signs.
    pub fn map_gens(&self, mut f: impl FnMut(usize) -> usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(f(l.gen()), l.is_inverse()))
                .collect(),
        )
    }
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    if letters.is_empty() {
        return Vec::new();
    }
    let n = letters.len();
    let mut best = 0;
    for k in 1..n {
        let cand = (0..n).map(|i| letters[(k + i) % n]);
        let cur = (0..n).map(|i| letters[(best + i) % n]);
        if cand.lt(cur) {
            best = k;
        }
    }
    let mut v = letters.to_vec();
    v.rotate_left(best);
    v
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// `g1 g2^-1 g3`, or `1` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens == ["1"] {
            return Ok(Word::empty());
        }
        for tok in tokens {
            let bad = || Error::Parse(format!("bad word token `{tok}`; expected `g<k>` or `g<k>^-1`"));
            let body = tok.strip_prefix('g').ok_or_else(bad)?;
            let (num, inverse) = match body.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (body, false),
            };
            let gen: usize = num.parse().map_err(|_| bad())?;
            if gen == 0 {
                return Err(bad());
            }
            letters.push(Letter::new(gen, inverse));
        }
        Ok(Word(letters))
    }
}
