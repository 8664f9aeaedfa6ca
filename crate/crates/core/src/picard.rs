//! Divisors of characters and the Picard group `Pic(G) = P / X(T ∩ DG)`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::intlat::{cokernel, AbelianGroup, IntMatrix};
use crate::rootdata::{components_with, pairing, simple_system, DynkinType, RootDataError, RootDatum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("character has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// Coefficients of a divisor in the basis `G1, ..., Gs` indexed by the simple
/// roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorVector {
    pub coefficients: Vec<i64>,
}

impl DivisorVector {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl std::ops::Add for &DivisorVector {
    type Output = DivisorVector;

    fn add(self, rhs: &DivisorVector) -> DivisorVector {
        assert_eq!(self.len(), rhs.len());
        DivisorVector { coefficients: self.coefficients.iter().zip(&rhs.coefficients).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for DivisorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.coefficients.iter().enumerate().map(|(i, a)| format!("{a}*G{}", i + 1)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardResult {
    pub group: AbelianGroup,
    /// Rows are basis characters, columns simple coroots.
    pub pairing_matrix: IntMatrix,
    pub kg_is_ufd: bool,
}

pub fn pairing_matrix(rd: &RootDatum) -> Result<IntMatrix, RootDataError> {
    let ss = simple_system(rd)?;
    Ok(rd.pairing_matrix(&ss))
}

/// `(chi) = sum_i <chi, alpha_i^vee> G_i`.
pub fn divisor_of_character(rd: &RootDatum, chi: &[i64]) -> Result<DivisorVector, PicardError> {
    if chi.len() != rd.rank() {
        return Err(PicardError::DimensionMismatch { expected: rd.rank(), got: chi.len() });
    }
    let ss = simple_system(rd)?;
    let coefficients = ss.indices.iter().map(|&k| pairing(chi, &rd.coroots()[k])).collect();
    Ok(DivisorVector { coefficients })
}

/// Cokernel of the pairing map `X(T) -> Z^s`. It is always finite since the
/// simple roots map onto the Cartan rows.
pub fn picard_group(rd: &RootDatum) -> Result<PicardResult, RootDataError> {
    let pairing_matrix = pairing_matrix(rd)?;
    let group = cokernel(&pairing_matrix);
    debug_assert!(group.is_finite());
    let kg_is_ufd = group.is_trivial();
    Ok(PicardResult { group, pairing_matrix, kg_is_ufd })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentFlags {
    pub dynkin: DynkinType,
    pub simply_connected: bool,
    pub adjoint: bool,
}

pub fn component_flags(rd: &RootDatum) -> Result<Vec<ComponentFlags>, RootDataError> {
    let ss = simple_system(rd)?;
    Ok(components_with(rd, &ss)?
        .components
        .into_iter()
        .map(|c| ComponentFlags { dynkin: c.dynkin, simply_connected: c.simply_connected, adjoint: c.adjoint })
        .collect())
}

/// Product of the connection indices `|P_c / Q_c|` over the components.
pub fn connection_index_product(rd: &RootDatum) -> Result<BigInt, RootDataError> {
    Ok(component_flags(rd)?.iter().map(|c| BigInt::from(c.dynkin.connection_index())).product())
}
