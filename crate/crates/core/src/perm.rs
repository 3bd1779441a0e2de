//! Permutations of the four vertices of a tetrahedron.

use std::fmt;

/// A permutation of `{0, 1, 2, 3}`, stored as the image of each point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its image array; `None` unless it is a bijection.
    pub fn from_images(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    /// Permutation sending `a[k]` to `b[k]` for the three listed points, extended
    /// to the fourth point by elimination.
    pub fn from_partial(a: [u8; 3], b: [u8; 3]) -> Option<Self> {
        let missing = |xs: [u8; 3]| (0..4u8).find(|x| !xs.contains(x));
        let mut img = [u8::MAX; 4];
        for k in 0..3 {
            img[a[k] as usize] = b[k];
        }
        img[missing(a)? as usize] = missing(b)?;
        Self::from_images(img)
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Self {
        let mut out = [0u8; 4];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm4(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Self {
        let mut out = [0u8; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i64 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All 24 permutations in lexicographic order of their image arrays.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..256u32).filter_map(|code| {
            let img = [
                (code & 3) as u8,
                ((code >> 2) & 3) as u8,
                ((code >> 4) & 3) as u8,
                ((code >> 6) & 3) as u8,
            ];
            Perm4::from_images([img[3], img[2], img[1], img[0]])
        })
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl std::str::FromStr for Perm4 {
    type Err = String;
    /// Four digits giving the images of 0, 1, 2, 3.
    fn from_str(s: &str) -> Result<Self, String> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 || !bytes.iter().all(|b| (b'0'..=b'3').contains(b)) {
            return Err(format!("{s:?} is not four digits in 0..=3"));
        }
        Perm4::from_images([bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0', bytes[3] - b'0'])
            .ok_or_else(|| format!("{s:?} is not a permutation"))
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({self})")
    }
}

/// Sign of the permutation that sorts three distinct values into ascending order.
pub(crate) fn sort3_sign(v: [usize; 3]) -> i64 {
    let mut inversions = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
