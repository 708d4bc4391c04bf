//! Closed-form orders of the groups in the Pauli/Clifford/braid tower.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symplectic::sp_order;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupOrders {
    pub n: usize,
    #[serde(serialize_with = "big")]
    pub pauli: BigUint,
    #[serde(serialize_with = "big")]
    pub projective_pauli: BigUint,
    #[serde(serialize_with = "big")]
    pub projective_clifford: BigUint,
    #[serde(serialize_with = "big")]
    pub braid_image: BigUint,
    #[serde(serialize_with = "big")]
    pub braid_image_mod_center: BigUint,
}

/// Integers that fit in u64 are written as JSON numbers, larger ones as strings.
fn big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e
}

/// |P_n| = 2^{2n+2}.
pub fn pauli_order(n: usize) -> BigUint {
    pow2(2 * n as u32 + 2)
}

/// |PC_n| = 2^{n²+2n} Π_{j=1..n}(4^j − 1) = 4^n · |Sp_{2n}(2)|.
pub fn projective_clifford_order(n: usize) -> BigUint {
    let n = n as u32;
    (1..=n).fold(pow2(n * n + 2 * n), |acc, j| acc * (pow2(2 * j) - BigUint::one()))
}

/// |Image(B_{2n+2})| = 2^{2n+2}(2n+2)! for n ≥ 2; the 4-strand image is
/// smaller (16·3! = 96) because the permutation quotient degenerates to S_3.
pub fn braid_image_order(n: usize) -> BigUint {
    if n == 1 {
        BigUint::from(96u32)
    } else {
        pauli_order(n) * factorial(2 * n as u32 + 2)
    }
}

pub fn group_orders(n: usize) -> Result<GroupOrders> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, lo: 1, hi: i64::MAX });
    }
    let braid_image = braid_image_order(n);
    Ok(GroupOrders {
        n,
        pauli: pauli_order(n),
        projective_pauli: pow2(2 * n as u32),
        projective_clifford: projective_clifford_order(n),
        braid_image_mod_center: &braid_image / 4u32,
        braid_image,
    })
}

/// |PC_n| / |Image(B_{2n+2})/Z_4|.
pub fn coverage_ratio(n: usize) -> Result<BigRational> {
    let o = group_orders(n)?;
    Ok(BigRational::new(o.projective_clifford.into(), o.braid_image_mod_center.into()))
}

/// Sanity link between the two closed forms: |PC_n| = 4^n · |Sp_{2n}(2)|.
pub fn clifford_over_symplectic(n: usize) -> bool {
    projective_clifford_order(n) == pow2(2 * n as u32) * sp_order(n as u32, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn table_values() {
        let o1 = group_orders(1).unwrap();
        assert_eq!(o1.projective_clifford, 24u32.into());
        assert_eq!(o1.braid_image, 96u32.into());
        assert_eq!(o1.braid_image_mod_center, 24u32.into());
        let o2 = group_orders(2).unwrap();
        assert_eq!(o2.projective_clifford, 11520u32.into());
        assert_eq!(o2.braid_image, 46080u32.into());
        assert_eq!(o2.pauli, 64u32.into());
        let o3 = group_orders(3).unwrap();
        assert_eq!(o3.projective_clifford, 92_897_280u32.into());
        assert_eq!(o3.braid_image_mod_center, 2_580_480u32.into());
        assert_eq!(o3.braid_image, 10_321_920u32.into());
    }

    #[test]
    fn ratios() {
        assert_eq!(coverage_ratio(1).unwrap(), BigRational::one());
        assert_eq!(coverage_ratio(2).unwrap(), BigRational::one());
        assert_eq!(coverage_ratio(3).unwrap(), BigRational::from_integer(BigInt::from(36)));
        // the ratio |Sp_{2n}(2)| / (2n+2)! grows without bound
        assert!(coverage_ratio(6).unwrap() > coverage_ratio(5).unwrap());
    }

    #[test]
    fn closed_forms_agree() {
        for n in 1..=10 {
            assert!(clifford_over_symplectic(n));
        }
    }

    #[test]
    fn json_numbers() {
        let s = serde_json::to_string(&group_orders(2).unwrap()).unwrap();
        assert!(s.contains("\"projective_clifford\":11520"));
        let s = serde_json::to_string(&group_orders(6).unwrap()).unwrap();
        assert!(s.contains("\"projective_clifford\":\""));
        assert!(s.contains("\"pauli\":16384"));
    }
}
