//! Normal forms for the finite dihedral group `I2(m)`.
//!
//! Every element has a reduced word that alternates between the two
//! generators, so it is determined by its length and its first letter. The
//! longest element (length `m`) and the identity are stored with leading
//! generator `0`.

/// Alternating reduced word `lead, 1 - lead, lead, ...` of length `len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralWord {
    pub len: u32,
    pub lead: u8,
}

/// Rotation by `k` or reflection `x -> k - x` acting on `Z/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Motion {
    Rot(u32),
    Ref(u32),
}

fn modm(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

impl DihedralWord {
    pub const IDENTITY: DihedralWord = DihedralWord { len: 0, lead: 0 };

    pub fn generator(s: usize) -> Self {
        DihedralWord {
            len: 1,
            lead: s as u8,
        }
    }

    fn normalized(len: u32, lead: u8, m: u32) -> Self {
        let lead = if len == 0 || len == m { 0 } else { lead };
        DihedralWord { len, lead }
    }

    /// Letter at 0-based position `pos` of the alternating word.
    fn letter(&self, pos: u32) -> u8 {
        if pos % 2 == 0 {
            self.lead
        } else {
            1 - self.lead
        }
    }

    pub fn last(&self) -> Option<u8> {
        (self.len > 0).then(|| self.letter(self.len - 1))
    }

    pub fn word(&self) -> Vec<usize> {
        (0..self.len).map(|p| self.letter(p) as usize).collect()
    }

    pub fn is_right_descent(&self, s: usize, m: u32) -> bool {
        self.len == m || self.last() == Some(s as u8)
    }

    pub fn is_left_descent(&self, s: usize, m: u32) -> bool {
        self.len == m || (self.len > 0 && self.lead == s as u8)
    }

    // s0 acts as x -> -x and s1 as x -> 1 - x.
    fn to_motion(self, m: u32) -> Motion {
        let l = self.len as i64;
        match (self.lead, self.len % 2) {
            (0, 0) => Motion::Rot(modm(-l / 2, m)),
            (0, _) => Motion::Ref(modm(-(l - 1) / 2, m)),
            (_, 0) => Motion::Rot(modm(l / 2, m)),
            (_, _) => Motion::Ref(modm((l + 1) / 2, m)),
        }
    }

    fn from_motion(motion: Motion, m: u32) -> Self {
        let (l0, l1) = match motion {
            Motion::Rot(k) => (2 * modm(-(k as i64), m), 2 * k),
            Motion::Ref(r) => (
                2 * modm(-(r as i64), m) + 1,
                2 * modm(r as i64 - 1, m) + 1,
            ),
        };
        if l0 <= l1 {
            Self::normalized(l0, 0, m)
        } else {
            Self::normalized(l1, 1, m)
        }
    }

    pub fn mul(self, other: DihedralWord, m: u32) -> DihedralWord {
        let product = match (self.to_motion(m), other.to_motion(m)) {
            (Motion::Rot(a), Motion::Rot(b)) => Motion::Rot((a + b) % m),
            (Motion::Rot(a), Motion::Ref(b)) => Motion::Ref((a + b) % m),
            (Motion::Ref(a), Motion::Rot(b)) => Motion::Ref(modm(a as i64 - b as i64, m)),
            (Motion::Ref(a), Motion::Ref(b)) => Motion::Rot(modm(a as i64 - b as i64, m)),
        };
        Self::from_motion(product, m)
    }

    /// Image under the diagram automorphism exchanging the two generators.
    pub fn swapped(self, m: u32) -> DihedralWord {
        Self::normalized(self.len, 1 - self.lead, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn eval(word: &[usize], m: u32) -> DihedralWord {
        word.iter().fold(DihedralWord::IDENTITY, |acc, &s| {
            acc.mul(DihedralWord::generator(s), m)
        })
    }

    #[test]
    fn alternating_words_round_trip() {
        for m in [3u32, 5, 7, 8] {
            let mut seen = HashSet::new();
            for lead in 0..2u8 {
                for len in 0..=m {
                    let w = DihedralWord::normalized(len, lead, m);
                    assert_eq!(eval(&w.word(), m), w, "m={m} len={len} lead={lead}");
                    seen.insert(w);
                }
            }
            assert_eq!(seen.len(), 2 * m as usize);
        }
    }

    #[test]
    fn braid_relation_and_involutions() {
        for m in [5u32, 7] {
            let a: Vec<usize> = (0..m).map(|i| (i % 2) as usize).collect();
            let b: Vec<usize> = (0..m).map(|i| ((i + 1) % 2) as usize).collect();
            assert_eq!(eval(&a, m), eval(&b, m));
            assert_eq!(eval(&[0, 0], m), DihedralWord::IDENTITY);
            assert_eq!(eval(&[1, 1], m), DihedralWord::IDENTITY);
        }
    }
}
