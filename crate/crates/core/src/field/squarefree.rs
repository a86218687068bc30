use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// `input = cofactor² · core` with `core` squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub input: BigInt,
    pub core: BigInt,
    pub cofactor: BigInt,
}

/// Splits `d` into `y² · core` by trial division. Intended for desk-scale
/// inputs; the running time is `O(√|d|)`.
pub fn squarefree_decompose(d: &BigInt) -> Result<SquarefreeDecomposition, FieldError> {
    if d.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    let mut rest = d.abs();
    let mut core = BigInt::one();
    let mut cofactor = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut exp = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            exp += 1;
        }
        if exp > 0 {
            cofactor *= p.pow(exp / 2);
            if exp % 2 == 1 {
                core *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    // whatever remains is 1 or a prime
    core *= rest;
    if d.is_negative() {
        core = -core;
    }
    Ok(SquarefreeDecomposition { input: d.clone(), core, cofactor })
}

/// True iff no prime square divides `n`. Zero is not squarefree.
pub fn is_squarefree(n: &BigInt) -> bool {
    match squarefree_decompose(n) {
        Ok(dec) => dec.cofactor.is_one(),
        Err(_) => false,
    }
}

pub(crate) fn squarefree_u64(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let dec = squarefree_decompose(&BigInt::from(n)).expect("nonzero");
    let core = u64::try_from(dec.core).expect("core fits");
    let cofactor = u64::try_from(dec.cofactor).expect("cofactor fits");
    (core, cofactor)
}
