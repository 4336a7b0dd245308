use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One of the three generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    C,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::A, Gen::B, Gen::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Gen> {
        Gen::ALL.get(i).copied()
    }

    fn letter(self) -> char {
        match self {
            Gen::A => 'A',
            Gen::B => 'B',
            Gen::C => 'C',
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A freely reduced word: adjacent syllables never share a generator and no
/// exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<(Gen, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letter(g: Gen) -> Self {
        Word::power(g, 1)
    }

    pub fn power(g: Gen, n: i64) -> Self {
        let mut w = Word::identity();
        w.push(g, n);
        w
    }

    /// Builds a word from arbitrary syllables, reducing as it goes.
    pub fn from_syllables<I: IntoIterator<Item = (Gen, i64)>>(it: I) -> Self {
        let mut w = Word::identity();
        for (g, n) in it {
            w.push(g, n);
        }
        w
    }

    /// Appends `g^n`, merging with the last syllable.
    pub fn push(&mut self, g: Gen, n: i64) {
        if n == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((h, m)) if *h == g => {
                *m += n;
                if *m == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, n)),
        }
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `A^3` as three.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|(_, n)| n.unsigned_abs()).sum()
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &(g, n) in &o.syllables {
            w.push(g, n);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|&(g, n)| (g, -n)).collect() }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `by * self * by^-1`.
    pub fn conjugated_by(&self, by: &Word) -> Word {
        by.mul(self).mul(&by.inverse())
    }

    /// Replaces every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word; 3]) -> Word {
        let mut w = Word::identity();
        for &(g, n) in &self.syllables {
            w = w.mul(&images[g.index()].pow(n));
        }
        w
    }

    /// The letters in order, each with exponent `+1` or `-1`.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.syllables.iter().flat_map(|&(g, n)| std::iter::repeat_n((g, n.signum()), n.unsigned_abs() as usize))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for &(g, n) in &self.syllables {
            if n == 1 {
                write!(f, "{}", g.letter())?;
            } else {
                write!(f, "{}^{}", g.letter(), n)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse word `{0}`")]
pub struct ParseWordError(pub String);

impl FromStr for Word {
    type Err = ParseWordError;

    /// Accepts `A^-1BC^2`, with lowercase letters as inverses and `1` or an
    /// empty string for the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseWordError(s.to_string());
        let t: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == ['1'] {
            return Ok(Word::identity());
        }
        let mut w = Word::identity();
        let mut i = 0;
        while i < t.len() {
            let (g, sign) = match t[i] {
                'A' => (Gen::A, 1),
                'B' => (Gen::B, 1),
                'C' => (Gen::C, 1),
                'a' => (Gen::A, -1),
                'b' => (Gen::B, -1),
                'c' => (Gen::C, -1),
                _ => return Err(err()),
            };
            i += 1;
            let mut exp = 1i64;
            if i < t.len() && t[i] == '^' {
                i += 1;
                let start = i;
                if i < t.len() && t[i] == '-' {
                    i += 1;
                }
                while i < t.len() && t[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = t[start..i].iter().collect();
                exp = digits.parse().map_err(|_| err())?;
            }
            w.push(g, sign * exp);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_prints() {
        let w = Word::from_syllables([(Gen::A, 1), (Gen::A, -1), (Gen::B, 2), (Gen::C, 1)]);
        assert_eq!(w.to_string(), "B^2C");
        assert_eq!(w.letter_length(), 3);
        assert_eq!(w.mul(&w.inverse()), Word::identity());
        assert_eq!(Word::identity().to_string(), "1");
    }

    #[test]
    fn parses_round_trip() {
        for s in ["ABC", "A^-1BC^2", "1", "B^3A^-2", "C"] {
            let w: Word = s.parse().unwrap();
            assert_eq!(w.to_string(), s);
        }
        assert_eq!("abc".parse::<Word>().unwrap().to_string(), "A^-1B^-1C^-1");
        assert!("AXB".parse::<Word>().is_err());
        assert!("A^".parse::<Word>().is_err());
    }

    #[test]
    fn substitution() {
        let w: Word = "AB".parse().unwrap();
        let images = ["C".parse().unwrap(), "A^-1".parse().unwrap(), "B".parse().unwrap()];
        assert_eq!(w.substitute(&images).to_string(), "CA^-1");
        let conj = Word::letter(Gen::C).conjugated_by(&Word::letter(Gen::B));
        assert_eq!(conj.to_string(), "BCB^-1");
    }
}
