//! Generator tuples and words.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::mat2::{self, Mat2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Monoid,
    Group,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Monoid => "monoid",
            Mode::Group => "group",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monoid" => Ok(Mode::Monoid),
            "group" => Ok(Mode::Group),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// A word in the generators: 1-based indices, negative for inverses.
/// The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<i64>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<i64>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::BadLetter { letter: 0, gens: 0 });
        }
        Ok(Word(letters))
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![i as i64])
    }

    /// Comma-separated signed indices, e.g. `"1,2,-1"`; the empty string is the identity.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let letters = text
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(text.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    pub fn letters(&self) -> &[i64] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Checks letters against a tuple with `gens` generators in `mode`.
    pub fn validate(&self, gens: usize, mode: Mode) -> Result<()> {
        for &l in &self.0 {
            if l.unsigned_abs() as usize > gens || l == 0 {
                return Err(Error::BadLetter { letter: l, gens });
            }
            if l < 0 && mode == Mode::Monoid {
                return Err(Error::InverseInMonoid);
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Images of the generators of a free monoid or group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepTuple {
    gens: Vec<Mat2>,
    mode: Mode,
}

impl RepTuple {
    pub fn new(gens: Vec<Mat2>, mode: Mode) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyTuple)?;
        let spec = first.spec();
        if let Some(bad) = gens.iter().find(|g| g.spec() != spec) {
            return Err(Error::FieldMismatch {
                expected: spec,
                found: bad.spec(),
            });
        }
        if mode == Mode::Group {
            if let Some(i) = gens.iter().position(|g| g.det().is_zero()) {
                return Err(Error::NonInvertibleGenerator(i + 1));
            }
        }
        Ok(RepTuple { gens, mode })
    }

    pub fn monoid(gens: Vec<Mat2>) -> Result<Self> {
        Self::new(gens, Mode::Monoid)
    }

    pub fn group(gens: Vec<Mat2>) -> Result<Self> {
        Self::new(gens, Mode::Group)
    }

    pub fn spec(&self) -> FieldSpec {
        self.gens[0].spec()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn gens(&self) -> &[Mat2] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generator image by 1-based index.
    pub fn gen(&self, i: usize) -> &Mat2 {
        &self.gens[i - 1]
    }

    /// Image of a word: the left-to-right product of its letters.
    pub fn eval(&self, w: &Word) -> Result<Mat2> {
        w.validate(self.len(), self.mode)?;
        let mut acc = Mat2::identity(self.spec());
        for &l in w.letters() {
            let g = self.gen(l.unsigned_abs() as usize);
            acc = if l > 0 {
                &acc * g
            } else {
                let inv = g
                    .inverse()
                    .ok_or(Error::NonInvertibleGenerator(l.unsigned_abs() as usize))?;
                &acc * &inv
            };
        }
        Ok(acc)
    }

    /// `(P^-1 A_1 P, ..., P^-1 A_m P)`.
    pub fn conjugate_by(&self, p: &Mat2) -> Result<RepTuple> {
        let gens = self
            .gens
            .iter()
            .map(|g| mat2::conjugate(p, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(RepTuple { gens, mode: self.mode })
    }

    /// Product of the generators with the given strictly increasing 1-based indices.
    pub fn subsequence_product(&self, indices: &[usize]) -> Mat2 {
        indices
            .iter()
            .fold(Mat2::identity(self.spec()), |acc, &i| &acc * self.gen(i))
    }
}

/// Strictly increasing index sequences over `1..=n`, ordered by length and
/// then lexicographically.
pub fn increasing_subsequences(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity((1usize << n) - 1);
    for k in 1..=n {
        let mut combo: Vec<usize> = (1..=k).collect();
        loop {
            out.push(combo.clone());
            // advance to the next k-combination in lexicographic order
            let mut i = k;
            while i > 0 && combo[i - 1] == n - k + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}
