//! Sign assignments for the star relations.
//!
//! At a vertex the three differences `D_j = b_{+j}b̄_{+j} − b_{−j}b̄_{−j}`
//! (one per lattice direction `p(e_j)`, missing arrows read as zero) are tied
//! together by `D_1 = ε|·D_2`, `D_3 = ε\·D_1`, `D_2 = ε/·D_3` with
//! `ε| ε\ ε/ = 1`.

use crate::tiling::LatticePoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignScheme {
    /// `ε| = (−1)^m`, `ε\ = (−1)^n`.
    #[default]
    Parity,
    /// All signs `+1`.
    Constant,
    /// Affine parity family; see [`SignScheme::family_signs`].
    Family(u8),
    /// [`SignScheme::Parity`] with `ε|` and `ε\` flipped at one vertex.
    Corrupted(LatticePoint),
}

fn parity(bits: u8, p: LatticePoint) -> i8 {
    let e = (bits & 1) as i64 + ((bits >> 1) & 1) as i64 * p.m + ((bits >> 2) & 1) as i64 * p.n;
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl SignScheme {
    /// Index of [`SignScheme::Parity`] inside the family.
    pub const PARITY_INDEX: u8 = 0b100_010;
    pub const FAMILY_SIZE: u8 = 64;

    /// Bits 0..3 give `ε|` as `(−1)^(b0 + b1·m + b2·n)`, bits 3..6 give `ε\`
    /// the same way; `ε/` is their product.
    pub fn family_signs(index: u8, p: LatticePoint) -> [i8; 3] {
        let a = parity(index & 7, p);
        let b = parity((index >> 3) & 7, p);
        [a, b, a * b]
    }

    /// `(ε|, ε\, ε/)` at a vertex.
    pub fn eps(&self, p: LatticePoint) -> [i8; 3] {
        match *self {
            SignScheme::Parity => Self::family_signs(Self::PARITY_INDEX, p),
            SignScheme::Constant => [1, 1, 1],
            SignScheme::Family(i) => Self::family_signs(i % Self::FAMILY_SIZE, p),
            SignScheme::Corrupted(at) => {
                let [a, b, c] = Self::family_signs(Self::PARITY_INDEX, p);
                if p == at {
                    [-a, -b, c]
                } else {
                    [a, b, c]
                }
            }
        }
    }

    /// Weights `σ` with `σ_1 D_1 = σ_2 D_2 = σ_3 D_3`.
    pub fn sigma(&self, p: LatticePoint) -> [i8; 3] {
        let [a, b, _] = self.eps(p);
        [1, a, b]
    }

    pub fn name(&self) -> alloc::string::String {
        match self {
            SignScheme::Parity => "parity".into(),
            SignScheme::Constant => "constant".into(),
            SignScheme::Family(i) => alloc::format!("family-{i}"),
            SignScheme::Corrupted(p) => alloc::format!("corrupted-{}-{}", p.m, p.n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn named_schemes_are_family_members() {
        let p = LatticePoint::new(3, -2);
        assert_eq!(SignScheme::Constant.eps(p), SignScheme::Family(0).eps(p));
        assert_eq!(SignScheme::Parity.eps(p), [-1, 1, -1]);
    }

    proptest! {
        #[test]
        fn product_is_one(idx in 0u8..64, m in -100i64..100, n in -100i64..100) {
            let p = LatticePoint::new(m, n);
            for s in [SignScheme::Family(idx), SignScheme::Corrupted(p), SignScheme::Parity] {
                let [a, b, c] = s.eps(p);
                prop_assert_eq!(a * b * c, 1);
                let [s1, s2, s3] = s.sigma(p);
                prop_assert_eq!(s1 * s2, a);
                prop_assert_eq!(s1 * s3, b);
                prop_assert_eq!(s2 * s3, c);
            }
        }
    }
}
