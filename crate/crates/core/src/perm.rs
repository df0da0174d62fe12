use crate::{Error, Result};

/// A permutation of `{0,1,2,3}`, stored by its image tuple: `image[i] = σ(i)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4 {
    image: [u8; 4],
}

impl Perm4 {
    pub fn new(image: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &v in &image {
            if v > 3 || seen[v as usize] {
                return Err(Error::BadPermutation(image));
            }
            seen[v as usize] = true;
        }
        Ok(Perm4 { image })
    }

    pub fn identity() -> Self {
        Perm4 { image: [0, 1, 2, 3] }
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(i: usize, j: usize) -> Self {
        let mut image = [0u8, 1, 2, 3];
        image.swap(i, j);
        Perm4 { image }
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v] as usize
    }

    pub fn image(&self) -> [u8; 4] {
        self.image
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut image = [0u8; 4];
        for i in 0..4 {
            image[i] = self.image[other.image[i] as usize];
        }
        Perm4 { image }
    }

    pub fn inverse(&self) -> Perm4 {
        let mut image = [0u8; 4];
        for i in 0..4 {
            image[self.image[i] as usize] = i as u8;
        }
        Perm4 { image }
    }

    /// Parity: `+1` for even permutations, `-1` for odd.
    pub fn sign(&self) -> i8 {
        let mut s = 1i8;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.image[i] > self.image[j] {
                    s = -s;
                }
            }
        }
        s
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// All 24 permutations, in lexicographic order of their image tuples.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Ok(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}{}{}{})",
            self.image[0], self.image[1], self.image[2], self.image[3]
        )
    }
}
