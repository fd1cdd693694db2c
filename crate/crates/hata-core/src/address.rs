//! Symbolic addresses for the vertices of the Hata tree set.
//!
//! A raw address is a word `w` over `{1, 2}` together with a corner index;
//! it denotes the point `F_w(p_corner)` where `p_0 = alpha`, `p_1 = 0`,
//! `p_2 = 1`. Distinct raw addresses can denote the same point. The point
//! identities of the IFS are generated by four suffix rewrites:
//!
//! ```text
//! (w·1, corner 1) = (w, corner 1)      0 is the fixed point of F1
//! (w·2, corner 2) = (w, corner 2)      1 is the fixed point of F2
//! (w·1, corner 2) = (w, corner 0)      alpha = F1(1)
//! (w·2, corner 1) = (w·1, corner 0)    |alpha|^2 = F1(alpha) = F2(0)
//! ```
//!
//! Applying them exhaustively reaches the unique representative that is
//! lexicographically least at the point's birth level (digit order 1 < 2,
//! corner order 0 < 1 < 2): either an empty word with any corner (the three
//! boundary points) or a nonempty word with corner 0. Exactly one rewrite
//! applies to any non-canonical form, so the normal form is well defined.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::ifs::IfsParams;

/// Corner of a cell, named after the boundary point it maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    /// Corner 0, the image of `alpha`.
    Alpha = 0,
    /// Corner 1, the image of `0`.
    Origin = 1,
    /// Corner 2, the image of `1`.
    Unit = 2,
}

impl Corner {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Corner {
        match i {
            0 => Corner::Alpha,
            1 => Corner::Origin,
            2 => Corner::Unit,
            _ => panic!("corner index {i} out of range"),
        }
    }

    /// The boundary point this corner maps to under the empty word.
    pub fn fixed_point(self, p: &IfsParams) -> Complex64 {
        match self {
            Corner::Alpha => p.alpha(),
            Corner::Origin => Complex64::new(0.0, 0.0),
            Corner::Unit => Complex64::new(1.0, 0.0),
        }
    }
}

/// Symbolic name of a vertex: `F_word(p_corner)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Address {
    word: Vec<u8>,
    corner: Corner,
}

impl Address {
    pub fn new(word: Vec<u8>, corner: Corner) -> Self {
        debug_assert!(word.iter().all(|&d| d == 1 || d == 2));
        Self { word, corner }
    }

    pub fn boundary(corner: Corner) -> Self {
        Self::new(Vec::new(), corner)
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn corner(&self) -> Corner {
        self.corner
    }

    /// Rewrites the address to its canonical representative.
    pub fn canonicalize(mut self) -> Address {
        match self.corner {
            Corner::Alpha => {}
            Corner::Origin => {
                while self.word.last() == Some(&1) {
                    self.word.pop();
                }
                if let Some(last) = self.word.last_mut() {
                    // (w·2, 1) -> (w·1, 0)
                    *last = 1;
                    self.corner = Corner::Alpha;
                }
            }
            Corner::Unit => {
                while self.word.last() == Some(&2) {
                    self.word.pop();
                }
                if self.word.pop().is_some() {
                    // (w·1, 2) -> (w, 0)
                    self.corner = Corner::Alpha;
                }
            }
        }
        self
    }

    pub fn is_canonical(&self) -> bool {
        self.corner == Corner::Alpha || self.word.is_empty()
    }

    /// Smallest level at which the point appears. Canonical addresses only.
    pub fn birth_level(&self) -> usize {
        debug_assert!(self.is_canonical());
        self.word.len()
    }

    /// Euclidean coordinate `F_w1(F_w2(...F_wm(p_corner)))`.
    pub fn coordinate(&self, p: &IfsParams) -> Complex64 {
        let mut z = self.corner.fixed_point(p);
        for &d in self.word.iter().rev() {
            z = p.apply(d, z);
        }
        z
    }

    /// The address of `F_prefix(self)`, canonicalized.
    pub fn prefixed(&self, prefix: &[u8]) -> Address {
        let mut word = Vec::with_capacity(prefix.len() + self.word.len());
        word.extend_from_slice(prefix);
        word.extend_from_slice(&self.word);
        Address::new(word, self.corner).canonicalize()
    }

    /// Inverse transport through `F1`: defined when the canonical word starts
    /// with digit 1 (the point lies in the first-level cell `K_1` and is not
    /// a boundary or critical-incident special case handled by the caller).
    pub fn strip_leading_one(&self) -> Option<Address> {
        debug_assert!(self.is_canonical());
        if self.word.first() == Some(&1) {
            Some(Address::new(self.word[1..].to_vec(), self.corner))
        } else {
            None
        }
    }
}

impl PartialOrd for Address {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Address {
    /// Birth level first, then word (1 < 2), then corner. For canonical
    /// addresses this is the vertex numbering used everywhere in the crate.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.word.len(), &self.word, self.corner).cmp(&(
            other.word.len(),
            &other.word,
            other.corner,
        ))
    }
}

impl fmt::Display for Address {
    /// `"12:0"` style: digits, colon, corner index. Empty word prints as `":0"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.word {
            write!(f, "{d}")?;
        }
        write!(f, ":{}", self.corner.index())
    }
}

/// `|V_m| = 2^(m+1) + 1`.
pub fn vertex_count(level: usize) -> usize {
    (1usize << (level + 1)) + 1
}

fn lexrank(word: &[u8]) -> usize {
    word.iter()
        .fold(0usize, |acc, &d| 2 * acc + (d - 1) as usize)
}

fn word_from_rank(len: usize, rank: usize) -> Vec<u8> {
    (0..len)
        .map(|i| 1 + ((rank >> (len - 1 - i)) & 1) as u8)
        .collect()
}

/// Stable vertex id of a canonical address: boundary points get 0, 1, 2 and
/// the block of points born at level k >= 1 occupies `2^k + 1 .. 2^(k+1) + 1`
/// in word order. Ids agree across levels, so `V_m` is always the id range
/// `0 .. 2^(m+1) + 1`.
pub fn vertex_id(addr: &Address) -> usize {
    assert!(addr.is_canonical(), "vertex_id expects a canonical address");
    let k = addr.word.len();
    if k == 0 {
        addr.corner.index()
    } else {
        (1 << k) + 1 + lexrank(&addr.word)
    }
}

/// Inverse of [`vertex_id`].
pub fn vertex_address(id: usize) -> Address {
    if id < 3 {
        Address::boundary(Corner::from_index(id))
    } else {
        let k = usize::BITS as usize - 1 - (id - 1).leading_zeros() as usize;
        let rank = id - ((1 << k) + 1);
        Address::new(word_from_rank(k, rank), Corner::Alpha)
    }
}

/// Words of `W_m` in lexicographic order (digit order 1 < 2).
pub fn words(level: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..(1usize << level)).map(move |rank| word_from_rank(level, rank))
}

/// Ids of the three corners `(p_w0, p_w1, p_w2)` of the cell `K_w`.
pub fn cell_vertex_ids(word: &[u8]) -> [usize; 3] {
    let w = word.to_vec();
    [
        vertex_id(&Address::new(w.clone(), Corner::Alpha)),
        vertex_id(&Address::new(w.clone(), Corner::Origin).canonicalize()),
        vertex_id(&Address::new(w, Corner::Unit).canonicalize()),
    ]
}
