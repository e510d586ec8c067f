//! ASEP states: words `m = m_n ... m_1` over {filled, empty}.
//!
//! A state of size n describes a lattice of n sites; site i is counted from
//! the *right*, so the leftmost letter of the written word is `m_n`. The
//! textual form uses `b` for a filled site and `w` for an empty one (the
//! bullet/circle of the usual notation); the empty word is the size-0 state.

use std::fmt;

use crate::ParseError;

/// One site of an ASEP state.
///
/// `White` is an empty site, `Black` a filled one. The derived order
/// (`White < Black`) makes the lexicographic order on written words agree
/// with the binary state index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    White,
    Black,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::White => Letter::Black,
            Letter::Black => Letter::White,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::White => 'w',
            Letter::Black => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'w' | '∘' | 'o' => Some(Letter::White),
            'b' | '•' => Some(Letter::Black),
            _ => None,
        }
    }
}

/// A word over {•, ∘}, stored leftmost letter (`m_n`) first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct State {
    letters: Vec<Letter>,
}

/// The three word symmetries: letter complement, reversal, and both.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymmetryKind {
    C,
    P,
    CP,
}

impl SymmetryKind {
    pub const ALL: [SymmetryKind; 3] = [SymmetryKind::C, SymmetryKind::P, SymmetryKind::CP];

    pub fn name(self) -> &'static str {
        match self {
            SymmetryKind::C => "C",
            SymmetryKind::P => "P",
            SymmetryKind::CP => "CP",
        }
    }
}

impl State {
    pub fn empty() -> State {
        State { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> State {
        State { letters }
    }

    /// Parses `"bw..."`; the empty string is the empty state.
    pub fn parse(s: &str) -> Result<State, ParseError> {
        s.chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| ParseError(format!("bad state letter {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(State::from_letters)
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters in written order: `m_n` first, `m_1` last.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The letter at site `pos`, 1-based from the right.
    ///
    /// Panics when `pos` is out of range; use [`State::decompose_at`] for a
    /// checked variant.
    pub fn letter_at(&self, pos: usize) -> Letter {
        assert!(pos >= 1 && pos <= self.size(), "site {pos} out of range");
        self.letters[self.size() - pos]
    }

    pub fn white_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l == Letter::White).count()
    }

    pub fn black_count(&self) -> usize {
        self.size() - self.white_count()
    }

    /// Splits `m = U m_pos V` around site `pos` (1-based from the right).
    pub fn decompose_at(&self, pos: usize) -> Result<Decomposition, StateError> {
        if pos < 1 || pos > self.size() {
            return Err(StateError::PositionOutOfRange {
                pos,
                size: self.size(),
            });
        }
        let cut = self.size() - pos;
        Ok(Decomposition {
            prefix: State::from_letters(self.letters[..cut].to_vec()),
            letter: self.letters[cut],
            suffix: State::from_letters(self.letters[cut + 1..].to_vec()),
            position: pos,
        })
    }

    /// New state with an extra leftmost letter `m_{n+1}`.
    pub fn prepend(&self, l: Letter) -> State {
        let mut letters = Vec::with_capacity(self.size() + 1);
        letters.push(l);
        letters.extend_from_slice(&self.letters);
        State::from_letters(letters)
    }

    /// Copy with the letter at site `pos` replaced.
    pub fn with_letter_at(&self, pos: usize, l: Letter) -> State {
        assert!(pos >= 1 && pos <= self.size(), "site {pos} out of range");
        let mut letters = self.letters.clone();
        let ix = self.size() - pos;
        letters[ix] = l;
        State::from_letters(letters)
    }

    pub fn apply_symmetry(&self, kind: SymmetryKind) -> State {
        let mut letters = self.letters.clone();
        match kind {
            SymmetryKind::C => {
                for l in &mut letters {
                    *l = l.flip();
                }
            }
            SymmetryKind::P => letters.reverse(),
            SymmetryKind::CP => {
                letters.reverse();
                for l in &mut letters {
                    *l = l.flip();
                }
            }
        }
        State::from_letters(letters)
    }

    /// Binary index: filled = 1, with `m_n` the most significant bit.
    pub fn index(&self) -> usize {
        self.letters.iter().fold(0, |acc, &l| {
            (acc << 1) | usize::from(l == Letter::Black)
        })
    }

    pub fn from_index(n: usize, index: usize) -> State {
        assert!(index < (1 << n), "index {index} out of range for size {n}");
        let letters = (0..n)
            .rev()
            .map(|bit| {
                if index >> bit & 1 == 1 {
                    Letter::Black
                } else {
                    Letter::White
                }
            })
            .collect();
        State::from_letters(letters)
    }

    /// All size-n states in index order.
    pub fn all(n: usize) -> Vec<State> {
        (0..1usize << n).map(|ix| State::from_index(n, ix)).collect()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for State {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<State, ParseError> {
        State::parse(s)
    }
}

/// A state split `m = U m_pos V` at some site.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub prefix: State,
    pub letter: Letter,
    pub suffix: State,
    pub position: usize,
}

impl Decomposition {
    /// Reassembles `U l V`, possibly with a different middle letter.
    pub fn assemble(&self, l: Letter) -> State {
        let mut letters = Vec::with_capacity(self.prefix.size() + 1 + self.suffix.size());
        letters.extend_from_slice(self.prefix.letters());
        letters.push(l);
        letters.extend_from_slice(self.suffix.letters());
        State::from_letters(letters)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateError {
    #[error("site {pos} out of range for a state of size {size}")]
    PositionOutOfRange { pos: usize, size: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> State {
        State::parse(text).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(State::empty().white_count(), 0);
        assert_eq!(s("bbw").white_count(), 1);
        assert_eq!(s("bbw").black_count(), 2);
        assert_eq!(s("wwww").white_count(), 4);
    }

    #[test]
    fn positions_count_from_the_right() {
        let m = s("bwb");
        assert_eq!(m.letter_at(1), Letter::Black);
        assert_eq!(m.letter_at(2), Letter::White);
        assert_eq!(m.letter_at(3), Letter::Black);
    }

    #[test]
    fn decompose_examples() {
        let d = s("bwb").decompose_at(2).unwrap();
        assert_eq!(d.prefix, s("b"));
        assert_eq!(d.letter, Letter::White);
        assert_eq!(d.suffix, s("b"));

        let d = s("b").decompose_at(1).unwrap();
        assert_eq!(d.prefix, State::empty());
        assert_eq!(d.letter, Letter::Black);
        assert_eq!(d.suffix, State::empty());

        let d = s("wwbb").decompose_at(4).unwrap();
        assert_eq!(d.prefix, State::empty());
        assert_eq!(d.letter, Letter::White);
        assert_eq!(d.suffix, s("wbb"));

        assert!(s("bw").decompose_at(0).is_err());
        assert!(s("bw").decompose_at(3).is_err());
    }

    #[test]
    fn assemble_round_trips() {
        let m = s("bwwb");
        for pos in 1..=4 {
            let d = m.decompose_at(pos).unwrap();
            assert_eq!(d.assemble(d.letter), m);
        }
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(s("bw").apply_symmetry(SymmetryKind::C), s("wb"));
        assert_eq!(s("bww").apply_symmetry(SymmetryKind::P), s("wwb"));
        assert_eq!(s("bww").apply_symmetry(SymmetryKind::CP), s("bbw"));
    }

    #[test]
    fn symmetries_are_involutions_and_cp_composes() {
        for n in 0..=8 {
            for m in State::all(n) {
                for kind in SymmetryKind::ALL {
                    assert_eq!(m.apply_symmetry(kind).apply_symmetry(kind), m);
                }
                assert_eq!(
                    m.apply_symmetry(SymmetryKind::P).apply_symmetry(SymmetryKind::C),
                    m.apply_symmetry(SymmetryKind::CP)
                );
            }
        }
    }

    #[test]
    fn index_round_trip_and_order() {
        assert_eq!(State::all(2), vec![s("ww"), s("wb"), s("bw"), s("bb")]);
        for n in 0..=6 {
            for (ix, m) in State::all(n).iter().enumerate() {
                assert_eq!(m.index(), ix);
                assert_eq!(&State::from_index(n, ix), m);
            }
        }
    }

    #[test]
    fn parse_display_round_trip() {
        for text in ["", "b", "w", "bwwb"] {
            assert_eq!(s(text).to_string(), text);
        }
        assert!(State::parse("bx").is_err());
    }
}
