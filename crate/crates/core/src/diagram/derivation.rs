//! Checking derivations in a finitely presented group.
//!
//! Words live over an abstract alphabet with formal inverses. A relator
//! `L = R` is read as the cyclic word `W = L·R⁻¹`. A step at position `p`
//! picks the rotation of `W` (or of `W⁻¹` for [`Direction::Backward`])
//! whose prefix `u` agrees longest with the current word from `p` on, and
//! replaces that occurrence of `u` by `v⁻¹`, where `W` rotated is `u·v`.
//! Replacing one side of a relator by the other, and removing a whole
//! relator, are both special cases. After each step the word is freely
//! reduced.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeLetter {
    pub sym: char,
    pub inverse: bool,
}

impl FreeLetter {
    pub fn inv(self) -> Self {
        FreeLetter {
            sym: self.sym,
            inverse: !self.inverse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(pub Vec<FreeLetter>);

impl FreeWord {
    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }

    pub fn reduced(&self) -> FreeWord {
        let mut out: Vec<FreeLetter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse word {0:?}")]
pub struct ParseWordError(pub String);

/// Letters are single alphabetic characters, each optionally followed by
/// an integer exponent: `"bca^2c^-1b^-1"`. Whitespace is ignored and `1`
/// alone is the empty word.
impl FromStr for FreeWord {
    type Err = ParseWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseWordError(s.to_string());
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars == ['1'] {
            return Ok(FreeWord::default());
        }
        let mut out = Vec::new();
        let mut k = 0;
        while k < chars.len() {
            let sym = chars[k];
            if !sym.is_alphabetic() {
                return Err(err());
            }
            k += 1;
            let mut exp: i64 = 1;
            if k < chars.len() && chars[k] == '^' {
                k += 1;
                let start = k;
                if k < chars.len() && chars[k] == '-' {
                    k += 1;
                }
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                exp = chars[start..k].iter().collect::<String>().parse().map_err(|_| err())?;
            }
            let l = FreeLetter { sym, inverse: exp < 0 };
            for _ in 0..exp.unsigned_abs() {
                out.push(l);
            }
        }
        Ok(FreeWord(out))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut k = 0;
        while k < self.0.len() {
            let l = self.0[k];
            let mut run = 1;
            while k + run < self.0.len() && self.0[k + run] == l {
                run += 1;
            }
            let e = if l.inverse { -(run as i64) } else { run as i64 };
            if e == 1 {
                write!(f, "{}", l.sym)?;
            } else {
                write!(f, "{}^{}", l.sym, e)?;
            }
            k += run;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Use `W = L·R⁻¹`.
    Forward,
    /// Use `W⁻¹ = R·L⁻¹`.
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub position: usize,
    pub relator: usize,
    pub direction: Direction,
}

impl Step {
    pub fn new(position: usize, relator: usize, direction: Direction) -> Self {
        Step {
            position,
            relator,
            direction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("step {index} does not apply: no rotation of the relator matches {subword:?}")]
    StepDoesNotApply { index: usize, subword: String },
    #[error("step {index} cites relator {relator}, which does not exist")]
    UnknownRelator { index: usize, relator: usize },
    #[error("link {link} of the chain does not end at the next displayed word")]
    ChainLinkMismatch { link: usize },
}

fn apply_step(
    word: &FreeWord,
    relators: &[(FreeWord, FreeWord)],
    step: &Step,
    index: usize,
) -> Result<FreeWord, DerivationError> {
    let (l, r) = relators.get(step.relator).ok_or(DerivationError::UnknownRelator {
        index,
        relator: step.relator,
    })?;
    let mut w = l.concat(&r.inverse());
    if step.direction == Direction::Backward {
        w = w.inverse();
    }
    let rest = &word.0[step.position.min(word.len())..];
    let n = w.len();
    let mut best: Option<(usize, usize)> = None;
    for rot in 0..n {
        let matched = (0..n.min(rest.len()))
            .take_while(|&t| w.0[(rot + t) % n] == rest[t])
            .count();
        if matched > 0 && best.is_none_or(|(_, b)| matched > b) {
            best = Some((rot, matched));
        }
    }
    let Some((rot, u_len)) = best else {
        let shown = FreeWord(rest.iter().take(n.max(1)).copied().collect());
        return Err(DerivationError::StepDoesNotApply {
            index,
            subword: shown.to_string(),
        });
    };
    let v = FreeWord((u_len..n).map(|t| w.0[(rot + t) % n]).collect());
    let mut out = word.0[..step.position].to_vec();
    out.extend(v.inverse().0);
    out.extend_from_slice(&rest[u_len..]);
    Ok(FreeWord(out).reduced())
}

/// Applies `steps` to `from`; true iff the result equals `to` after free
/// reduction of both.
pub fn derivation_check(
    relators: &[(FreeWord, FreeWord)],
    steps: &[Step],
    from: &FreeWord,
    to: &FreeWord,
) -> Result<bool, DerivationError> {
    let mut w = from.reduced();
    for (index, step) in steps.iter().enumerate() {
        w = apply_step(&w, relators, step, index)?;
    }
    Ok(w == to.reduced())
}

/// Checks a displayed chain `w₀ = w₁ = … = w_n`, one list of steps per
/// link.
pub fn derivation_chain_check(
    relators: &[(FreeWord, FreeWord)],
    chain: &[FreeWord],
    links: &[Vec<Step>],
) -> Result<(), DerivationError> {
    assert_eq!(chain.len(), links.len() + 1, "one step list per link");
    for (link, steps) in links.iter().enumerate() {
        if !derivation_check(relators, steps, &chain[link], &chain[link + 1])? {
            return Err(DerivationError::ChainLinkMismatch { link });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(w("bca^2c^-1b^-1").to_string(), "bca^2c^-1b^-1");
        assert_eq!(w("a a^-1 b").reduced(), w("b"));
        assert_eq!(w("1"), FreeWord::default());
        assert!("a^".parse::<FreeWord>().is_err());
    }

    #[test]
    fn side_replacement() {
        // a b = b a applied to "xaby" at position 1.
        let rel = vec![(w("ab"), w("ba"))];
        let ok = derivation_check(&rel, &[Step::new(1, 0, Direction::Forward)], &w("xaby"), &w("xbay")).unwrap();
        assert!(ok);
        let err = derivation_check(&rel, &[Step::new(0, 0, Direction::Forward)], &w("xaby"), &w("xbay"));
        assert!(matches!(err, Err(DerivationError::StepDoesNotApply { index: 0, .. })));
    }
}
