//! Closed-form K-group tables for the sphere algebras with the antipodal
//! involution: the period-8 coefficient ring, the real and complex groups
//! of the sphere algebras, and the K-homology groups.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite direct sum of `Z` and `Z_2` summands, compared up to isomorphism
/// (free part first, then 2-torsion).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: u32,
    pub torsion_z2: u32,
}

pub const TRIVIAL: AbelianGroup = AbelianGroup { free_rank: 0, torsion_z2: 0 };
pub const Z: AbelianGroup = AbelianGroup { free_rank: 1, torsion_z2: 0 };
pub const Z2: AbelianGroup = AbelianGroup { free_rank: 0, torsion_z2: 1 };
pub const ZZ: AbelianGroup = AbelianGroup { free_rank: 2, torsion_z2: 0 };

impl AbelianGroup {
    pub const fn new(free_rank: u32, torsion_z2: u32) -> Self {
        AbelianGroup { free_rank, torsion_z2 }
    }

    pub fn is_trivial(&self) -> bool {
        *self == TRIVIAL
    }

    pub fn has_free_summand(&self) -> bool {
        self.free_rank > 0
    }
}

impl Add for AbelianGroup {
    type Output = AbelianGroup;
    fn add(self, rhs: AbelianGroup) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.free_rank + rhs.free_rank,
            torsion_z2: self.torsion_z2 + rhs.torsion_z2,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        match self.torsion_z2 {
            0 => {}
            1 => parts.push("ℤ_2".to_string()),
            t => parts.push(format!("ℤ_2^{t}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// The period-8 real coefficient ring:
/// `(ℤ, ℤ_2, ℤ_2, 0, ℤ, 0, 0, 0)` in degrees 0..7.
pub fn ko_ring(n: i64) -> AbelianGroup {
    match n.rem_euclid(8) {
        0 | 4 => Z,
        1 | 2 => Z2,
        _ => TRIVIAL,
    }
}

/// Real K-groups of the sphere algebras. `d = 0` and `d = 1` are the
/// hard-coded special rows (the complex numbers and the self-conjugate
/// circle algebra); for `d >= 2` the group splits as
/// `ko_ring(n) ⊕ ko_ring(n - d - 2)`.
pub fn ko_group(d: i64, n: i64) -> Result<AbelianGroup> {
    match d {
        d if d < 0 => Err(Error::domain(format!("sphere dimension must be >= 0, got {d}"))),
        0 => Ok(if n.rem_euclid(2) == 0 { Z } else { TRIVIAL }),
        1 => Ok(match n.rem_euclid(4) {
            0 | 3 => Z,
            1 => Z2,
            _ => TRIVIAL,
        }),
        _ => Ok(ko_ring(n) + ko_ring(n - d - 2)),
    }
}

/// Complex K-groups of the sphere algebras: `(ℤ^2, 0)` for even `d`,
/// `(ℤ, ℤ)` for odd `d`, with period 2 in `n`.
pub fn ku_group(d: i64, n: i64) -> Result<AbelianGroup> {
    if d < 0 {
        return Err(Error::domain(format!("sphere dimension must be >= 0, got {d}")));
    }
    Ok(if d % 2 == 0 {
        if n.rem_euclid(2) == 0 {
            ZZ
        } else {
            TRIVIAL
        }
    } else {
        Z
    })
}

/// Real K-homology groups of the sphere algebras:
/// degree-shifted circle-algebra row for `d = 1`, and
/// `ko_ring(i) ⊕ ko_ring(i + d + 2)` for `d >= 2`.
pub fn kko_hom(d: i64, i: i64) -> Result<AbelianGroup> {
    match d {
        d if d < 1 => Err(Error::domain(format!("homology groups need d >= 1, got {d}"))),
        1 => ko_group(1, i - 1),
        _ => Ok(ko_ring(i) + ko_ring(i + d + 2)),
    }
}

/// Degree of the free generator of the reduced real K-theory of the
/// `d`-sphere algebra, `(d + 2) mod 8`, for `d >= 2`.
pub fn expected_generator_degree(d: i64) -> Result<u8> {
    if d < 2 {
        return Err(Error::domain(format!(
            "the generator-degree formula applies for d >= 2, got {d}"
        )));
    }
    Ok(((d + 2) % 8) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_ring_values_and_period() {
        assert_eq!(ko_ring(0), Z);
        assert_eq!(ko_ring(1), Z2);
        assert_eq!(ko_ring(2), Z2);
        assert_eq!(ko_ring(3), TRIVIAL);
        assert_eq!(ko_ring(4), Z);
        assert_eq!(ko_ring(-4), Z);
        for n in -16..16 {
            assert_eq!(ko_ring(n), ko_ring(n + 8));
        }
    }

    #[test]
    fn low_dimension_spot_checks() {
        assert_eq!(ko_group(3, 1).unwrap(), Z + Z2);
        assert_eq!(ko_group(2, 0).unwrap(), ZZ);
        assert_eq!(ko_group(4, 2).unwrap(), Z + Z2);
        assert_eq!(ko_group(4, 0).unwrap(), Z + Z2);
        assert_eq!(ku_group(2, 0).unwrap(), ZZ);
        assert_eq!(ku_group(3, 1).unwrap(), Z);
        assert_eq!(ku_group(3, 0).unwrap(), Z);
        assert!(ko_group(-1, 0).is_err());
    }

    #[test]
    fn homology_values() {
        assert_eq!(kko_hom(2, 0).unwrap(), ZZ);
        assert_eq!(kko_hom(1, 1).unwrap(), Z);
        assert_eq!(kko_hom(3, 3).unwrap(), Z);
        assert!(kko_hom(0, 0).is_err());
    }

    #[test]
    fn generator_degrees() {
        assert_eq!(expected_generator_degree(6).unwrap(), 0);
        assert_eq!(expected_generator_degree(3).unwrap(), 5);
        assert_eq!(expected_generator_degree(2).unwrap(), 4);
        assert!(expected_generator_degree(1).is_err());
    }

    #[test]
    fn display_is_order_normalized() {
        assert_eq!((Z2 + Z).to_string(), "ℤ ⊕ ℤ_2");
        assert_eq!(ZZ.to_string(), "ℤ^2");
        assert_eq!(TRIVIAL.to_string(), "0");
        assert_eq!(Z2.to_string(), "ℤ_2");
        // isomorphism, not display order
        assert_eq!(Z2 + Z, Z + Z2);
    }

    #[test]
    fn period_8_in_n_for_all_d() {
        for d in 0..6 {
            for n in 0..8 {
                assert_eq!(ko_group(d, n).unwrap(), ko_group(d, n + 8).unwrap());
            }
        }
    }
}
