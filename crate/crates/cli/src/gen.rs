//! Seeded random inputs for the verification suites.

use lsea_core::maps::{DerivationData, PolyMap};
use lsea_core::scalar::ratio;
use lsea_core::solver::{slice, RationalMatrix};
use lsea_core::{BasisWord, Element, Generator, LMonomial, RWord, Scalar};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    /// Independent streams for different suites under one seed.
    pub fn new(seed: u64, stream: &str) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // FNV-1a keeps the stream id stable across platforms and releases
        let id = stream
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
        rng.set_stream(id);
        Self { rng }
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn scalar(&mut self) -> Scalar {
        ratio(self.rng.random_range(-5..=5), self.rng.random_range(1..=4))
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let c = self.scalar();
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn generator(&mut self, n: usize) -> Generator {
        let i = self.range(1, n);
        if self.coin() {
            Generator::l(i)
        } else {
            Generator::r(i)
        }
    }

    pub fn generator_word(&mut self, n: usize, max_len: usize) -> Vec<Generator> {
        let len = self.range(0, max_len);
        (0..len).map(|_| self.generator(n)).collect()
    }

    /// A basis word with `l_deg` l-letters and `r_deg` r-letters.
    pub fn basis_word(&mut self, n: usize, l_deg: usize, r_deg: usize) -> BasisWord {
        let mut e = vec![0u32; n];
        for _ in 0..l_deg {
            e[self.range(1, n) - 1] += 1;
        }
        let r = (0..r_deg).map(|_| self.range(1, n) as u32).collect();
        BasisWord::new(LMonomial::from_exponents(e), RWord::from_letters(r))
    }

    /// Up to `terms` terms, each of total degree at most `max_deg`.
    pub fn element(&mut self, n: usize, max_deg: usize, terms: usize) -> Element {
        let k = self.range(0, terms);
        let t: Vec<_> = (0..k)
            .map(|_| {
                let d = self.range(0, max_deg);
                let a = self.range(0, d);
                (self.basis_word(n, a, d - a), self.scalar())
            })
            .collect();
        Element::from_terms(n, t).expect("valid words")
    }

    pub fn nonzero_element(&mut self, n: usize, max_deg: usize, terms: usize) -> Element {
        loop {
            let e = self.element(n, max_deg, terms.max(1));
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub fn l_poly(&mut self, n: usize, max_deg: usize, terms: usize) -> Element {
        let k = self.range(0, terms);
        let t: Vec<_> = (0..k)
            .map(|_| {
                let d = self.range(0, max_deg);
                (self.basis_word(n, d, 0), self.scalar())
            })
            .collect();
        Element::from_terms(n, t).expect("valid words")
    }

    pub fn r_poly(&mut self, n: usize, max_deg: usize, terms: usize) -> Element {
        let k = self.range(0, terms);
        let t: Vec<_> = (0..k)
            .map(|_| {
                let d = self.range(0, max_deg);
                (self.basis_word(n, 0, d), self.scalar())
            })
            .collect();
        Element::from_terms(n, t).expect("valid words")
    }

    /// An element of `I_n`: every term carries at least one r-letter.
    pub fn ideal_element(&mut self, n: usize, max_deg: usize, terms: usize) -> Element {
        let k = self.range(1, terms.max(1));
        let t: Vec<_> = (0..k)
            .map(|_| {
                let d = self.range(1, max_deg.max(1));
                let a = self.range(0, d - 1);
                (self.basis_word(n, a, d - a), self.scalar())
            })
            .collect();
        Element::from_terms(n, t).expect("valid words")
    }

    /// A nonzero homogeneous element of `I_n` of degree `d ≥ 1`.
    pub fn homogeneous_ideal(&mut self, n: usize, d: u32, terms: usize) -> Element {
        let s = slice(n, d);
        let positions = s.ideal_positions();
        loop {
            let k = self.range(1, terms.max(1));
            let t: Vec<_> = (0..k)
                .map(|_| {
                    let p = positions[self.range(0, positions.len() - 1)];
                    (s.basis()[p].clone(), self.scalar())
                })
                .collect();
            let e = Element::from_terms(n, t).expect("valid words");
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// `Σ c_k l_n^k` with degree at most `max_deg`.
    pub fn univariate(&mut self, n: usize, max_deg: usize) -> Element {
        let ln = Element::l(n, n).expect("index in range");
        let d = self.range(0, max_deg);
        let mut g = Element::zero(n);
        for k in 0..=d {
            let c = if k == d { self.nonzero_scalar() } else { self.scalar() };
            g = &g + &ln.pow(k as u32).scale(&c);
        }
        g
    }

    /// An invertible affine map of `L_n` with its inverse.
    pub fn affine(&mut self, n: usize) -> (PolyMap, PolyMap) {
        loop {
            let rows = (0..n).map(|_| (0..n).map(|_| self.scalar()).collect()).collect();
            let a = RationalMatrix::from_rows(rows).expect("square");
            let b: Vec<Scalar> = (0..n).map(|_| self.scalar()).collect();
            if let Ok(pair) = PolyMap::affine(&a, &b) {
                return pair;
            }
        }
    }

    /// An elementary map `l_i ↦ l_i + p` with `p` free of `l_i`, and its inverse.
    pub fn elementary(&mut self, n: usize, max_deg: usize) -> (PolyMap, PolyMap) {
        let i = self.range(1, n);
        let p = self
            .l_poly(n, max_deg, 3)
            .filter_terms(|w| w.lpart.exponent(i) == 0);
        PolyMap::elementary(n, i, &p).expect("p avoids l_i")
    }

    /// A composite of one to four elementary or affine maps, with its inverse.
    pub fn tame(&mut self, n: usize) -> (PolyMap, PolyMap) {
        let k = self.range(1, 4);
        let (mut f, mut g) = (PolyMap::identity(n), PolyMap::identity(n));
        for _ in 0..k {
            let (a, b) = if self.coin() { self.affine(n) } else { self.elementary(n, 2) };
            // x ↦ f(a(x)) is inverted by x ↦ b(g(x))
            f = f.compose(&a).expect("same ambient");
            g = b.compose(&g).expect("same ambient");
        }
        (f, g)
    }

    /// A verified derivation: inner part plus multiples of triangular extensions.
    pub fn derivation(&mut self, n: usize) -> DerivationData {
        let a = self.element(n, 3, 3);
        let mut d = DerivationData::ad(&a);
        if n >= 2 {
            let g = self.univariate(n, 2);
            let e = DerivationData::extend_triangular(n, &g).expect("univariate");
            d = d.add(&e).expect("same ambient").verify().expect("sum of derivations");
        }
        d
    }
}
