use std::cmp::Ordering;
use std::fmt;

/// Reduced word in two involutions `X0`, `X1` (`Xi·Xi = 1`).
///
/// A reduced word never repeats a letter, so it alternates and is fixed by
/// its length and first letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Word {
    len: u16,
    first: u8,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, first: 0 };

    pub fn letter(x: u8) -> Self {
        assert!(x < 2, "letter index must be 0 or 1");
        Self { len: 1, first: x }
    }

    /// Alternating word of length `len` starting with `first`.
    pub fn alternating(first: u8, len: usize) -> Self {
        assert!(first < 2, "letter index must be 0 or 1");
        if len == 0 {
            return Self::EMPTY;
        }
        Self {
            len: len as u16,
            first,
        }
    }

    /// Reduce an arbitrary letter sequence.
    pub fn from_letters(letters: &[u8]) -> Self {
        letters
            .iter()
            .fold(Self::EMPTY, |w, &x| w.mul(Self::letter(x)))
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn first(self) -> Option<u8> {
        (self.len > 0).then_some(self.first)
    }

    pub fn last(self) -> Option<u8> {
        (self.len > 0).then(|| self.first ^ ((self.len as u8 - 1) & 1))
    }

    pub fn letters(self) -> impl Iterator<Item = u8> {
        (0..self.len).map(move |i| self.first ^ (i as u8 & 1))
    }

    /// Number of occurrences of letter `x`.
    pub fn count(self, x: u8) -> usize {
        let n = self.len as usize;
        if n == 0 {
            0
        } else if self.first == x {
            n.div_ceil(2)
        } else {
            n / 2
        }
    }

    /// Concatenate and cancel adjacent equal letters at the junction.
    pub fn mul(self, rhs: Word) -> Word {
        match (self.last(), rhs.first()) {
            (None, _) => rhs,
            (_, None) => self,
            (Some(l), Some(f)) if l != f => Word {
                len: self.len + rhs.len,
                first: self.first,
            },
            _ => match self.len.cmp(&rhs.len) {
                Ordering::Equal => Word::EMPTY,
                Ordering::Greater => Word::alternating(self.first, (self.len - rhs.len) as usize),
                Ordering::Less => Word::alternating(
                    rhs.first ^ (self.len as u8 & 1),
                    (rhs.len - self.len) as usize,
                ),
            },
        }
    }

    pub fn reverse(self) -> Word {
        match self.last() {
            None => self,
            Some(l) => Word::alternating(l, self.len as usize),
        }
    }

    /// Exchange the two letters.
    pub fn swap_letters(self) -> Word {
        match self.first() {
            None => self,
            Some(f) => Word::alternating(f ^ 1, self.len as usize),
        }
    }

    pub(crate) fn fmt_with(self, f: &mut fmt::Formatter<'_>, party: char) -> fmt::Result {
        for (i, x) in self.letters().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{party}{x}")?;
        }
        Ok(())
    }
}

impl Ord for Word {
    /// Shorter words first, then lexicographic with `0 < 1`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then(self.first.cmp(&other.first))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        self.fmt_with(f, 'X')
    }
}

/// Product of an Alice word and a Bob word; the two parties commute.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub alice: Word,
    pub bob: Word,
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial {
        alice: Word::EMPTY,
        bob: Word::EMPTY,
    };

    pub fn new(alice: Word, bob: Word) -> Self {
        Self { alice, bob }
    }

    pub fn a(x: u8) -> Self {
        Self::new(Word::letter(x), Word::EMPTY)
    }

    pub fn b(y: u8) -> Self {
        Self::new(Word::EMPTY, Word::letter(y))
    }

    pub fn ab(x: u8, y: u8) -> Self {
        Self::new(Word::letter(x), Word::letter(y))
    }

    pub fn is_identity(self) -> bool {
        self.alice.is_empty() && self.bob.is_empty()
    }

    pub fn degree(self) -> usize {
        self.alice.len() + self.bob.len()
    }

    pub fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.alice.mul(rhs.alice), self.bob.mul(rhs.bob))
    }

    pub fn adjoint(self) -> Monomial {
        Monomial::new(self.alice.reverse(), self.bob.reverse())
    }

    /// Image under `A1 ↦ -A1, B0 ↔ B1` as (sign is negative, monomial).
    pub fn symmetry(self) -> (bool, Monomial) {
        let negative = self.alice.count(1) % 2 == 1;
        (negative, Monomial::new(self.alice, self.bob.swap_letters()))
    }
}

impl Ord for Monomial {
    /// `(alice length, bob length, alice lex, bob lex)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.alice
            .len()
            .cmp(&other.alice.len())
            .then(self.bob.len().cmp(&other.bob.len()))
            .then(self.alice.first.cmp(&other.alice.first))
            .then(self.bob.first.cmp(&other.bob.first))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// `A0*A1*B1`, or `1` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        self.alice.fmt_with(f, 'A')?;
        if !self.alice.is_empty() && !self.bob.is_empty() {
            f.write_str("*")?;
        }
        self.bob.fmt_with(f, 'B')
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reduction by repeated deletion of adjacent equal pairs.
    fn reduce_naive(letters: &[u8]) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::new();
        for &x in letters {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn matches_naive_reduction() {
        for n in 0..9u32 {
            for bits in 0..(1u32 << n) {
                let letters: Vec<u8> = (0..n).map(|i| ((bits >> i) & 1) as u8).collect();
                let w = Word::from_letters(&letters);
                assert_eq!(w.letters().collect::<Vec<_>>(), reduce_naive(&letters));
            }
        }
    }

    #[test]
    fn products() {
        let a0 = Word::letter(0);
        let a1 = Word::letter(1);
        assert_eq!(a0.mul(a0), Word::EMPTY);
        let a01 = a0.mul(a1);
        let a10 = a1.mul(a0);
        assert_eq!(a01.mul(a10), Word::EMPTY);
        assert_eq!(a01.reverse(), a10);
        assert_eq!(
            Monomial::a(0).mul(Monomial::b(0)),
            Monomial::b(0).mul(Monomial::a(0))
        );
    }

    #[test]
    fn display_and_order() {
        let m = Monomial::new(Word::from_letters(&[0, 1]), Word::letter(1));
        assert_eq!(m.to_string(), "A0*A1*B1");
        assert_eq!(Monomial::IDENTITY.to_string(), "1");
        assert!(Monomial::a(1) < Monomial::ab(0, 0));
        assert!(Monomial::b(1) < Monomial::ab(0, 0));
        assert!(Monomial::b(0) < Monomial::a(0));
    }
}
