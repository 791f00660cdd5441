//! Built-in presentations, constructed combinatorially.

use std::collections::{BTreeMap, HashMap};

use crate::bialg::{CoTerm, Presentation, PresentationBuilder};
use crate::error::{Error, Result};
use crate::exactq::q;
use crate::par;

pub const FQSYM_DEFAULT_CAP: usize = 5;

type Key = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelId {
    Tensor { letters: usize },
    NSym,
    FQSym,
}

impl ModelId {
    pub fn build(self, max_degree: usize) -> Result<Presentation> {
        match self {
            ModelId::Tensor { letters } => tensor_model(letters, max_degree),
            ModelId::NSym => nsym_model(max_degree),
            ModelId::FQSym => fqsym_model(max_degree),
        }
    }
}

struct Tables<'a> {
    keys: &'a [Vec<Key>],
    index: Vec<HashMap<&'a [usize], usize>>,
}

impl<'a> Tables<'a> {
    fn new(keys: &'a [Vec<Key>]) -> Self {
        let index = keys
            .iter()
            .map(|ks| ks.iter().enumerate().map(|(i, k)| (k.as_slice(), i)).collect())
            .collect();
        Tables { keys, index }
    }

    fn find(&self, n: usize, k: &[usize]) -> usize {
        self.index[n][k]
    }
}

/// Assemble a presentation from keyed bases. `product` and `coproduct` return
/// integer combinations of keys; `degree` recovers the degree of a key.
fn assemble(
    name: String,
    keys: Vec<Vec<Key>>,
    label: impl Fn(&[usize]) -> String,
    degree: impl Fn(&[usize]) -> usize + Sync,
    product: impl Fn(&[usize], &[usize]) -> Vec<(Key, i64)> + Sync,
    coproduct: impl Fn(&[usize]) -> Vec<(Key, Key, i64)> + Sync,
) -> Result<Presentation> {
    let n_max = keys.len() - 1;
    let labels = keys
        .iter()
        .map(|ks| ks.iter().map(|k| label(k)).collect())
        .collect();
    let mut builder = PresentationBuilder::new(name, labels)?;
    let t = Tables::new(&keys);

    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|p| (0..=n_max - p).map(move |r| (p, r)))
        .collect();
    let products = par::map(pairs, |(p, r)| {
        let mut out = Vec::new();
        for (i, x) in t.keys[p].iter().enumerate() {
            for (j, y) in t.keys[r].iter().enumerate() {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (z, c) in product(x, y) {
                    *acc.entry(t.find(p + r, &z)).or_default() += c;
                }
                out.push((p, i, r, j, acc.into_iter().map(|(k, c)| (k, q(c))).collect()));
            }
        }
        out
    });
    for (p, i, r, j, terms) in products.into_iter().flatten() {
        builder.set_product(p, i, r, j, terms)?;
    }

    let coproducts = par::map_range(n_max + 1, |n| {
        t.keys[n]
            .iter()
            .map(|x| {
                coproduct(x)
                    .into_iter()
                    .map(|(l, r, c)| {
                        let p = degree(&l);
                        CoTerm::new(p, t.find(p, &l), t.find(n - p, &r), q(c))
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });
    for (n, per_degree) in coproducts.into_iter().enumerate() {
        for (i, terms) in per_degree.into_iter().enumerate() {
            builder.set_coproduct(n, i, terms)?;
        }
    }
    builder.build()
}

fn require_degree(max_degree: usize) -> Result<()> {
    if max_degree == 0 {
        return Err(Error::Precondition("truncation degree must be at least 1".into()));
    }
    Ok(())
}

fn letter(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("x{i}")
    }
}

/// All words of length `n` over `d` letters, in lexicographic order.
pub fn words(d: usize, n: usize) -> Vec<Key> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..d).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Compositions of `n` in lexicographic order; the empty composition for 0.
pub fn compositions(n: usize) -> Vec<Key> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Key> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Key>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The permutation with the same relative order as a word of distinct letters.
pub fn standardize(w: &[usize]) -> Key {
    let mut sorted: Vec<usize> = w.to_vec();
    sorted.sort_unstable();
    w.iter()
        .map(|x| sorted.binary_search(x).expect("letter present") + 1)
        .collect()
}

/// Shuffles of `u` and `v`, each listed once per interleaving.
pub fn shuffles(u: &[usize], v: &[usize]) -> Vec<Key> {
    let n = u.len() + v.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let (mut a, mut b) = (u.iter(), v.iter());
        let w = (0..n)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    *a.next().expect("u letter")
                } else {
                    *b.next().expect("v letter")
                }
            })
            .collect();
        out.push(w);
    }
    out.sort();
    out
}

/// Splits of a word into a subword on a subset of positions and the
/// complementary subword.
fn unshuffles(w: &[usize]) -> Vec<(Key, Key)> {
    (0u64..(1u64 << w.len()))
        .map(|mask| {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (i, &a) in w.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    l.push(a);
                } else {
                    r.push(a);
                }
            }
            (l, r)
        })
        .collect()
}

/// The tensor algebra on `d` degree-1 letters with letters primitive.
pub fn tensor_model(d: usize, max_degree: usize) -> Result<Presentation> {
    require_degree(max_degree)?;
    if d == 0 {
        return Err(Error::Precondition("tensor model needs at least one letter".into()));
    }
    let keys = (0..=max_degree).map(|n| words(d, n)).collect();
    assemble(
        format!("tensor(d={d})"),
        keys,
        |w| {
            if w.is_empty() {
                "1".into()
            } else {
                w.iter().map(|&a| letter(a)).collect()
            }
        },
        |w| w.len(),
        |x, y| vec![([x, y].concat(), 1)],
        |w| unshuffles(w).into_iter().map(|(l, r)| (l, r, 1)).collect(),
    )
}

/// Noncommutative symmetric functions in the complete basis `S^c`.
pub fn nsym_model(max_degree: usize) -> Result<Presentation> {
    require_degree(max_degree)?;
    let keys = (0..=max_degree).map(compositions).collect();
    assemble(
        "nsym".into(),
        keys,
        |c| {
            if c.is_empty() {
                "1".into()
            } else {
                c.iter().map(|m| format!("S{m}")).collect()
            }
        },
        |c| c.iter().sum(),
        |x, y| vec![([x, y].concat(), 1)],
        |c| {
            let mut out = vec![(Vec::new(), Vec::new())];
            for &m in c {
                out = out
                    .into_iter()
                    .flat_map(|(l, r): (Key, Key)| {
                        (0..=m).map(move |i| {
                            let mut l = l.clone();
                            let mut r = r.clone();
                            if i > 0 {
                                l.push(i);
                            }
                            if i < m {
                                r.push(m - i);
                            }
                            (l, r)
                        })
                    })
                    .collect();
            }
            out.into_iter().map(|(l, r)| (l, r, 1)).collect()
        },
    )
}

/// Malvenuto–Reutenauer algebra in the F-basis, with the default degree cap.
pub fn fqsym_model(max_degree: usize) -> Result<Presentation> {
    fqsym_model_capped(max_degree, FQSYM_DEFAULT_CAP)
}

pub fn fqsym_model_capped(max_degree: usize, cap: usize) -> Result<Presentation> {
    require_degree(max_degree)?;
    if max_degree > cap {
        return Err(Error::Resource(format!(
            "fqsym degree {max_degree} exceeds the cap {cap}"
        )));
    }
    let keys = (0..=max_degree).map(permutations).collect();
    assemble(
        "fqsym".into(),
        keys,
        |s| {
            if s.is_empty() {
                "1".into()
            } else {
                let digits: String = s.iter().map(|v| v.to_string()).collect();
                format!("F{digits}")
            }
        },
        |s| s.len(),
        |x, y| {
            let shifted: Vec<usize> = y.iter().map(|v| v + x.len()).collect();
            shuffles(x, &shifted).into_iter().map(|w| (w, 1)).collect()
        },
        |s| {
            (0..=s.len())
                .map(|i| (standardize(&s[..i]), standardize(&s[i..]), 1))
                .collect()
        },
    )
}

/// `Q[x]/(x²)` with `x` primitive in degree 1: an algebra that is not free and
/// whose tables break compatibility at `Δ(x·x)`.
pub fn square_zero_model(max_degree: usize) -> Result<Presentation> {
    require_degree(max_degree)?;
    let mut basis = vec![vec!["1".to_string()], vec!["x".to_string()]];
    basis.resize(max_degree + 1, Vec::new());
    let mut b = PresentationBuilder::new("square-zero", basis)?;
    b.set_product(0, 0, 0, 0, vec![(0, q(1))])?;
    b.set_product(0, 0, 1, 0, vec![(0, q(1))])?;
    b.set_product(1, 0, 0, 0, vec![(0, q(1))])?;
    b.set_coproduct(0, 0, vec![CoTerm::new(0, 0, 0, q(1))])?;
    b.set_coproduct(1, 0, vec![CoTerm::new(1, 0, 0, q(1)), CoTerm::new(0, 0, 0, q(1))])?;
    b.build()
}
