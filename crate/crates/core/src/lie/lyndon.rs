use std::fmt;

use serde::Serialize;

use super::{bracket, pbw_series};
use crate::bialg::{Element, Presentation};
use crate::error::{Error, Result};
use crate::freealg::{word_counts, GeneratorSet};

/// A graded letter: symbol `index` among those of degree `degree`. Symbols
/// compare by degree first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Symbol {
    pub degree: usize,
    pub index: usize,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}", self.degree, self.index)
    }
}

/// Standard bracketing of a Lyndon word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LyndonTree {
    Leaf(Symbol),
    Node(Box<LyndonTree>, Box<LyndonTree>),
}

impl LyndonTree {
    pub fn foliage(&self) -> Vec<Symbol> {
        match self {
            LyndonTree::Leaf(s) => vec![*s],
            LyndonTree::Node(l, r) => {
                let mut w = l.foliage();
                w.extend(r.foliage());
                w
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            LyndonTree::Leaf(s) => s.degree,
            LyndonTree::Node(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn render(&self, name: &dyn Fn(Symbol) -> String) -> String {
        match self {
            LyndonTree::Leaf(s) => name(*s),
            LyndonTree::Node(l, r) => format!("[{},{}]", l.render(name), r.render(name)),
        }
    }

    /// Bracket tree of a Lyndon word via its standard factorization `w = uv`,
    /// `v` the longest proper Lyndon suffix.
    pub fn from_word(w: &[Symbol]) -> Result<Self> {
        if !is_lyndon(w) {
            return Err(Error::Precondition("word is not Lyndon".into()));
        }
        Ok(Self::bracketing(w))
    }

    fn bracketing(w: &[Symbol]) -> Self {
        if w.len() == 1 {
            return LyndonTree::Leaf(w[0]);
        }
        let split = (1..w.len())
            .find(|&i| is_lyndon(&w[i..]))
            .expect("a single letter is Lyndon");
        LyndonTree::Node(
            Box::new(Self::bracketing(&w[..split])),
            Box::new(Self::bracketing(&w[split..])),
        )
    }
}

impl fmt::Display for LyndonTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|s| s.to_string()))
    }
}

/// Nonempty and strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[Symbol]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of total degree `n` over `u[d]` symbols in each degree `d`,
/// in lexicographic order.
pub fn lyndon_words(u: &[usize], n: usize) -> Vec<Vec<Symbol>> {
    fn go(u: &[usize], left: usize, prefix: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>) {
        if left == 0 {
            if is_lyndon(prefix) {
                out.push(prefix.clone());
            }
            return;
        }
        for d in 1..=left.min(u.len().saturating_sub(1)) {
            for index in 0..u[d] {
                prefix.push(Symbol { degree: d, index });
                go(u, left - d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(u, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Standard bracketings of all Lyndon words of degree `n`.
pub fn lyndon_basis(u: &[usize], n: usize) -> Vec<LyndonTree> {
    lyndon_words(u, n)
        .iter()
        .map(|w| LyndonTree::bracketing(w))
        .collect()
}

/// Dimensions of the free graded Lie algebra with `u[d]` generators in degree
/// `d`, obtained from `Π (1 - tⁿ)^{-c_n} = 1 / (1 - Σ u_d t^d)` degree by degree.
pub fn graded_witt_counts(u: &[usize], max_degree: usize) -> Vec<usize> {
    let target = word_counts(u, max_degree);
    let mut c = vec![0usize; max_degree + 1];
    for n in 1..=max_degree {
        let partial = pbw_series(&c, n);
        c[n] = usize::try_from(target[n] as i128 - partial[n]).expect("Witt counts are nonnegative");
    }
    c
}

/// Image of a tree in `h`, sending symbol `(d, i)` to `generators[d][i]`.
pub fn evaluate_tree(h: &Presentation, tree: &LyndonTree, g: &GeneratorSet) -> Result<Element> {
    match tree {
        LyndonTree::Leaf(s) => g
            .generators
            .get(s.degree)
            .and_then(|gs| gs.get(s.index))
            .map(|v| Element::new(s.degree, v.clone()))
            .ok_or_else(|| Error::Precondition(format!("no generator for symbol {s}"))),
        LyndonTree::Node(l, r) => bracket(h, &evaluate_tree(h, l, g)?, &evaluate_tree(h, r, g)?),
    }
}
