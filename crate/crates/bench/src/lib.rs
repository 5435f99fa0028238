//! Inputs shared by the benchmarks in `benches/`.

use lsea_core::Element;

/// `l_1 + r_1 + … + l_n + r_n`, the densest degree-one element.
pub fn generator_sum(n: usize) -> Element {
    (1..=n).fold(Element::zero(n), |acc, i| {
        &(&acc + &Element::l(n, i).expect("index in range")) + &Element::r(n, i).expect("index in range")
    })
}

/// Every r-letter product of length `d`, summed.
pub fn r_sum(n: usize, d: u32) -> Element {
    let r = (1..=n).fold(Element::zero(n), |acc, i| &acc + &Element::r(n, i).expect("index in range"));
    r.pow(d)
}
