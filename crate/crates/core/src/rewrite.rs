//! Single-step rewriting to normal form.
//!
//! This is deliberately naive: words in the free monoid on the generators are
//! rewritten at their leftmost redex by `r_i l_j -> l_j r_i + r_i r_j` or
//! `l_i l_j -> l_j l_i` (`i > j`) until no redex remains. It shares nothing
//! with [`crate::product`] and exists to cross-check it.

use std::collections::HashMap;

use num_traits::Zero;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::word::{BasisWord, GenKind, Generator, LMonomial, RWord};

fn leftmost_redex(word: &[Generator]) -> Option<usize> {
    word.windows(2).position(|p| match (p[0].kind, p[1].kind) {
        (GenKind::R, GenKind::L) => true,
        (GenKind::L, GenKind::L) => p[0].index > p[1].index,
        _ => false,
    })
}

fn to_basis(n: usize, word: &[Generator]) -> BasisWord {
    let mut exps = vec![0u32; n];
    let mut r = Vec::new();
    for g in word {
        match g.kind {
            GenKind::L => exps[g.index - 1] += 1,
            GenKind::R => r.push(g.index as u32),
        }
    }
    BasisWord::new(LMonomial::from_exponents(exps), RWord::from_letters(r))
}

/// Normal form of the product of `word`'s generators.
pub fn normal_form_oracle(n: usize, word: &[Generator]) -> Result<Element> {
    if n == 0 {
        return Err(Error::ZeroAmbient);
    }
    for g in word {
        g.check(n)?;
    }
    let mut pending: HashMap<Vec<Generator>, Scalar> = HashMap::new();
    pending.insert(word.to_vec(), scalar::one());
    let mut done: Vec<(BasisWord, Scalar)> = Vec::new();
    while let Some(w) = pending.keys().next().cloned() {
        let c = pending.remove(&w).expect("key just observed");
        if c.is_zero() {
            continue;
        }
        let Some(k) = leftmost_redex(&w) else {
            done.push((to_basis(n, &w), c));
            continue;
        };
        let (a, b) = (w[k], w[k + 1]);
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        *pending.entry(swapped).or_insert_with(Scalar::zero) += &c;
        if a.kind == GenKind::R {
            let mut extra = w;
            extra[k + 1] = Generator::r(b.index);
            *pending.entry(extra).or_insert_with(Scalar::zero) += c;
        }
    }
    Element::from_terms(n, done)
}
