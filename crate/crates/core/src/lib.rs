//! Root data, Picard groups and infinitesimal-invariant checks for connected
//! reductive groups over an algebraically closed field of characteristic `p`.
//!
//! - [`intlat`]: exact integer matrices, Smith normal form, cokernels.
//! - [`rootdata`]: root data, simple systems, Dynkin components, presets.
//! - [`picard`]: divisors of characters and `Pic(G)`.
//! - [`liecrit`]: differential criteria and factoriality verdicts.
//! - [`polyfp`]: sparse polynomials and linear algebra over `F_p`.
//! - [`slnverify`]: symbolic checks on `K[SL_n]` at small `n`.

pub mod intlat;
pub mod liecrit;
pub mod picard;
pub mod polyfp;
pub mod report;
pub mod rootdata;
pub mod slnverify;

pub use intlat::{cokernel, smith_normal_form, AbelianGroup, IntMatrix, Smith};
pub use liecrit::{verdicts, LieCritError, VerdictReport};
pub use picard::{divisor_of_character, picard_group, DivisorVector, PicardError, PicardResult};
pub use polyfp::{Derivation, FpMatrix, Poly, PolyError, PolyRing};
pub use report::{CheckReport, CheckStatus, Reason, Status, StatusKind};
pub use rootdata::{catalog, preset, RootDataError, RootDatum};
pub use slnverify::{SlnContext, SlnError};

/// Trial-division primality test; the primes used here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
