//! Words in the free group on `x_1, .., x_k`.
//!
//! Letters are stored in application order: `letters[0]` is applied first.
//! Letter `+i` stands for `x_i`, `-i` for `x_i^-1`. Text form is a
//! whitespace-separated list of `x<i>` or `x<i>^<e>` tokens in the same order.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{GeneratorTuple, Group, GroupElement};

pub type Letter = i32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Free,
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordKind {
    Reduced,
    CyclicallyReduced,
    Positive,
}

/// Position of a letter in the enumeration order `+1 < -1 < +2 < -2 < ..`.
#[inline]
pub fn letter_rank(l: Letter) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

#[inline]
pub fn letter_from_rank(r: usize) -> Letter {
    let i = (r / 2 + 1) as Letter;
    if r % 2 == 0 {
        i
    } else {
        -i
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>, k: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > k) {
            return Err(Error::domain(format!("letter {bad} outside 1..={k}")));
        }
        Ok(Word { letters, k })
    }

    pub fn empty(k: usize) -> Self {
        Word { letters: Vec::new(), k }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] + w[1] != 0)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced() && (self.len() < 2 || self.letters[0] + self.letters[self.len() - 1] != 0)
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    pub fn is_kind(&self, kind: WordKind) -> bool {
        match kind {
            WordKind::Reduced => self.is_reduced(),
            WordKind::CyclicallyReduced => self.is_cyclically_reduced(),
            WordKind::Positive => self.is_positive(),
        }
    }

    /// The formal inverse: letters reversed and negated.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
            k: self.k,
        }
    }

    /// `self` followed by `other` (so `self` is applied first).
    pub fn concat(&self, other: &Word) -> Word {
        Word {
            letters: [self.letters.as_slice(), other.letters.as_slice()].concat(),
            k: self.k.max(other.k),
        }
    }

    pub fn rotate(&self, by: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let r = by % letters.len();
            letters.rotate_left(r);
        }
        Word { letters, k: self.k }
    }

    pub fn normalize(&self, mode: Reduction) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        if mode == Reduction::Cyclic {
            let (mut lo, mut hi) = (0, out.len());
            while hi - lo >= 2 && out[lo] + out[hi - 1] == 0 {
                lo += 1;
                hi -= 1;
            }
            out = out[lo..hi].to_vec();
        }
        Word { letters: out, k: self.k }
    }

    /// Distinct generator indices used, in increasing order.
    pub fn generators_used(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self.letters.iter().map(|l| l.unsigned_abs() as usize).collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// Relabels the used generators to `1..=k'` (preserving their relative order).
    pub fn compact(&self) -> Word {
        let used = self.generators_used();
        let letters = self
            .letters
            .iter()
            .map(|&l| {
                let idx = used.binary_search(&(l.unsigned_abs() as usize)).unwrap() as Letter + 1;
                idx * l.signum()
            })
            .collect();
        Word { letters, k: used.len() }
    }

    /// Relabels generator `i` as `perm[i-1] + 1`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Word> {
        let letters = self
            .letters
            .iter()
            .map(|&l| (perm[l.unsigned_abs() as usize - 1] as Letter + 1) * l.signum())
            .collect();
        Word::new(letters, perm.len())
    }

    /// A word that is a power of one involution-shaped letter: `x_i x_i` or `x_i^-1 x_i^-1`.
    pub fn is_square_of_letter(&self) -> bool {
        self.len() == 2 && self.letters[0] == self.letters[1]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&x| x == l).count();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let e = run as i64 * l.signum() as i64;
            if e == 1 {
                write!(f, "x{}", l.abs())?;
            } else {
                write!(f, "x{}^{}", l.abs(), e)?;
            }
            i += run;
        }
        Ok(())
    }
}

pub fn parse_word(text: &str, k: usize) -> Result<Word> {
    let mut letters = Vec::new();
    let mut pos = 0;
    for token in text.split_whitespace() {
        let start = text[pos..].find(token).map_or(pos, |o| pos + o);
        pos = start + token.len();
        let body = token
            .strip_prefix('x')
            .ok_or_else(|| Error::parse(start, format!("token {token:?} must start with 'x'")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e),
            None => (body, "1"),
        };
        let i: usize = idx
            .parse()
            .map_err(|_| Error::parse(start + 1, format!("bad generator index in {token:?}")))?;
        if i == 0 || i > k {
            return Err(Error::parse(start + 1, format!("generator index {i} outside 1..={k}")));
        }
        let e: i64 = exp
            .parse()
            .map_err(|_| Error::parse(start + 1 + idx.len(), format!("bad exponent in {token:?}")))?;
        if e == 0 {
            return Err(Error::parse(start + 1 + idx.len(), "zero exponent"));
        }
        let l = i as Letter * e.signum() as Letter;
        letters.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
    }
    Ok(Word { letters, k })
}

/// Smallest `k` for which `text` parses (the largest generator index mentioned).
pub fn infer_arity(text: &str) -> usize {
    text.split_whitespace()
        .filter_map(|t| t.strip_prefix('x'))
        .filter_map(|b| b.split('^').next()?.parse::<usize>().ok())
        .max()
        .unwrap_or(1)
}

/// All words of exact length `len` of the given kind, in lexicographic order
/// of letter ranks.
pub fn enumerate_words(k: usize, len: usize, kind: WordKind) -> WordIter {
    WordIter {
        k,
        len,
        kind,
        ranks: Vec::with_capacity(len),
        started: false,
        done: k == 0,
    }
}

pub struct WordIter {
    k: usize,
    len: usize,
    kind: WordKind,
    ranks: Vec<usize>,
    started: bool,
    done: bool,
}

impl WordIter {
    fn alphabet(&self) -> usize {
        2 * self.k
    }

    /// Whether `rank` may follow the current prefix.
    fn allowed(&self, rank: usize) -> bool {
        match self.kind {
            WordKind::Positive => rank % 2 == 0,
            _ => self.ranks.last().is_none_or(|&prev| prev ^ 1 != rank),
        }
    }

    /// Extends the prefix with smallest allowed letters starting at `from`
    /// for the next position; backtracks when a position is exhausted.
    fn advance(&mut self, mut from: usize) -> bool {
        loop {
            if self.ranks.len() == self.len {
                return true;
            }
            match (from..self.alphabet()).find(|&r| self.allowed(r)) {
                Some(r) => {
                    self.ranks.push(r);
                    from = 0;
                }
                None => match self.ranks.pop() {
                    Some(last) => from = last + 1,
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.done {
                return None;
            }
            let ok = if !self.started {
                self.started = true;
                self.advance(0)
            } else {
                match self.ranks.pop() {
                    Some(last) => self.advance(last + 1),
                    None => false,
                }
            };
            if !ok {
                self.done = true;
                return None;
            }
            if self.len == 0 {
                self.done = true;
            }
            let w = Word {
                letters: self.ranks.iter().map(|&r| letter_from_rank(r)).collect(),
                k: self.k,
            };
            if self.kind != WordKind::CyclicallyReduced || w.is_cyclically_reduced() {
                return Some(w);
            }
        }
    }
}

/// Value of `w` at `gens`: the product applying `g_{w_1}` first. Empty word gives the identity.
pub fn evaluate(group: &Group, w: &Word, gens: &GeneratorTuple) -> Result<GroupElement> {
    if w.k() != gens.k() {
        return Err(Error::domain(format!("word over {} generators, tuple of {}", w.k(), gens.k())));
    }
    let inverses: Vec<Option<GroupElement>> = (1..=gens.k())
        .map(|i| w.letters().contains(&-(i as Letter)).then(|| group.inv(&gens.elems[i - 1])))
        .collect();
    let mut acc = group.identity();
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let g = if l > 0 { &gens.elems[i] } else { inverses[i].as_ref().unwrap() };
        acc = group.mul(&acc, g);
    }
    Ok(acc)
}
