//! The extended binary Golay code.
//!
//! Coordinates are labelled `0..=22` for the points of the projective line
//! over F_23 and `23` for infinity. A word is a 24-bit mask, bit `i` being
//! coordinate `i`.

use crate::error::{LatticeError, Result};

/// Right-hand block of the systematic generator `[I_12 | B]`, one row per
/// string, leftmost character = coordinate 12.
///
/// Row-reduced from the extended cyclic code with generator polynomial
/// `1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11`; validated by the weight
/// distribution rather than trusted.
const SYSTEMATIC_BLOCK: [&str; 12] = [
    "101011100011",
    "111110010010",
    "110100101011",
    "110001110110",
    "110011011001",
    "011001101101",
    "001100110111",
    "101101111000",
    "010110111100",
    "001011011110",
    "101110001101",
    "010111000111",
];

/// `i -> i + 1 mod 23`, infinity fixed.
pub const SHIFT_PERMUTATION: [usize; 24] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 0, 23,
];

/// `i -> 2i mod 23`, infinity fixed.
pub const DOUBLING_PERMUTATION: [usize; 24] = [
    0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23,
];

pub const LENGTH: usize = 24;
const MASK: u32 = (1 << LENGTH) - 1;

/// A binary linear `[24, 12]` code given by a systematic generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GolayCode {
    generator: [u32; 12],
    codewords: Option<Vec<u32>>,
}

impl GolayCode {
    fn from_block(block: &[&str; 12]) -> Self {
        let mut generator = [0u32; 12];
        for (i, row) in block.iter().enumerate() {
            let mut w = 1u32 << i;
            for (j, ch) in row.chars().enumerate() {
                if ch == '1' {
                    w |= 1 << (12 + j);
                }
            }
            generator[i] = w;
        }
        GolayCode {
            generator,
            codewords: None,
        }
    }

    pub fn generator(&self) -> &[u32; 12] {
        &self.generator
    }

    /// Generator rows as 0/1 vectors.
    pub fn generator_matrix(&self) -> Vec<[u8; LENGTH]> {
        self.generator.iter().map(|&w| to_bits(w)).collect()
    }

    fn encode(&self, message: u32) -> u32 {
        self.generator
            .iter()
            .enumerate()
            .filter(|(i, _)| message >> i & 1 == 1)
            .fold(0, |acc, (_, g)| acc ^ g)
    }

    /// All 4096 codewords, in message order.
    pub fn codewords(&self) -> Vec<u32> {
        match &self.codewords {
            Some(c) => c.clone(),
            None => (0..1u32 << 12).map(|m| self.encode(m)).collect(),
        }
    }

    /// Caches the codeword list.
    pub fn materialize(&mut self) {
        if self.codewords.is_none() {
            self.codewords = Some(self.codewords());
        }
    }

    /// Membership via the systematic form: the low 12 bits fix the message.
    pub fn contains(&self, word: u32) -> bool {
        word & !MASK == 0 && self.encode(word & 0xfff) == word
    }

    /// Number of codewords of each weight `0..=24`.
    pub fn weight_distribution(&self) -> [usize; LENGTH + 1] {
        let mut dist = [0usize; LENGTH + 1];
        for w in self.codewords() {
            dist[w.count_ones() as usize] += 1;
        }
        dist
    }

    pub fn minimum_weight(&self) -> usize {
        self.codewords()
            .into_iter()
            .filter(|&w| w != 0)
            .map(|w| w.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// Whether the coordinate permutation `i -> perm[i]` maps the code to itself.
    pub fn is_automorphism(&self, perm: &[usize; LENGTH]) -> bool {
        is_permutation(perm)
            && self
                .generator
                .iter()
                .all(|&g| self.contains(permute_word(g, perm)))
    }

    /// Weight distribution `(1, 759, 2576, 759, 1)` on `(0, 8, 12, 16, 24)`.
    pub fn validate(&self) -> Result<()> {
        let dist = self.weight_distribution();
        let mut expected = [0usize; LENGTH + 1];
        expected[0] = 1;
        expected[8] = 759;
        expected[12] = 2576;
        expected[16] = 759;
        expected[24] = 1;
        if dist != expected {
            return Err(LatticeError::SelfCheck(format!(
                "Golay weight distribution {dist:?}"
            )));
        }
        Ok(())
    }
}

pub fn to_bits(w: u32) -> [u8; LENGTH] {
    let mut out = [0u8; LENGTH];
    for (i, b) in out.iter_mut().enumerate() {
        *b = (w >> i & 1) as u8;
    }
    out
}

pub fn permute_word(w: u32, perm: &[usize; LENGTH]) -> u32 {
    (0..LENGTH)
        .filter(|&i| w >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << perm[i])
}

pub fn is_permutation(perm: &[usize; LENGTH]) -> bool {
    let mut seen = [false; LENGTH];
    perm.iter()
        .all(|&p| p < LENGTH && !std::mem::replace(&mut seen[p], true))
}

/// The stored Golay code. Validation is the caller's job (see [`GolayCode::validate`]).
pub fn make_golay() -> GolayCode {
    GolayCode::from_block(&SYSTEMATIC_BLOCK)
}
