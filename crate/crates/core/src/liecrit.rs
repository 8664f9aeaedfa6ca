//! Differential tests for roots and coroots in characteristic `p`, the
//! symplectic-factor cross-check, and the factoriality verdicts for the
//! `g`-invariants in `K[G]`, `K[g]` and `S(g)`.

use serde::Serialize;
use thiserror::Error;

use crate::picard::{picard_group, PicardResult};
use crate::report::{CheckReport, Reason, Status};
use crate::rootdata::{components_with, pairing, simple_system, ComponentInfo, RootDataError, RootDatum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieCritError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

fn ensure_prime(p: u64) -> Result<(), LieCritError> {
    if crate::is_prime(p) {
        Ok(())
    } else {
        Err(LieCritError::NotPrime(p))
    }
}

fn divisible(v: &[i64], p: u64) -> bool {
    let p = p as i64;
    v.iter().all(|x| x % p == 0)
}

/// Roots in `p X(T)`, i.e. with vanishing differential.
pub fn zero_differential_roots(rd: &RootDatum, p: u64) -> Vec<usize> {
    (0..rd.num_roots()).filter(|&k| divisible(&rd.roots()[k], p)).collect()
}

/// Coroots in `p Y(T)`.
pub fn zero_differential_coroots(rd: &RootDatum, p: u64) -> Vec<usize> {
    (0..rd.num_roots()).filter(|&k| divisible(&rd.coroots()[k], p)).collect()
}

pub fn has_regular_semisimple(rd: &RootDatum, p: u64) -> bool {
    zero_differential_roots(rd, p).is_empty()
}

/// Dynkin component containing root `k`: the simple coroots pairing
/// nontrivially with a root all lie in its component.
fn component_of_root(rd: &RootDatum, info: &ComponentInfo, simple: &[usize], k: usize) -> Option<usize> {
    let i = simple.iter().position(|&s| pairing(&rd.roots()[k], &rd.coroots()[s]) != 0)?;
    info.component_of_simple(i)
}

pub const SYMPLECTIC_FACTOR_CHECK: &str = "symplectic_factor";

/// When no regular semisimple element exists, checks that `p = 2` and that
/// every root with zero differential lies in a simply connected component of
/// type `C_n` (`A_1 = C_1` included).
pub fn symplectic_factor_check(rd: &RootDatum, p: u64) -> Result<CheckReport, LieCritError> {
    ensure_prime(p)?;
    let zero = zero_differential_roots(rd, p);
    if zero.is_empty() {
        return Ok(CheckReport::pass(SYMPLECTIC_FACTOR_CHECK));
    }
    if p != 2 {
        return Ok(CheckReport::fail(
            SYMPLECTIC_FACTOR_CHECK,
            format!("root {} has zero differential at p = {p}", zero[0]),
        ));
    }
    let ss = simple_system(rd)?;
    let info = components_with(rd, &ss)?;
    for k in zero {
        let Some(c) = component_of_root(rd, &info, &ss.indices, k) else {
            return Ok(CheckReport::fail(SYMPLECTIC_FACTOR_CHECK, format!("root {k} lies in no component")));
        };
        let comp = &info.components[c];
        if !(comp.simply_connected && comp.is_type_c_like()) {
            return Ok(CheckReport::fail(
                SYMPLECTIC_FACTOR_CHECK,
                format!(
                    "root {k} lies in component {} (simply connected: {})",
                    comp.dynkin, comp.simply_connected
                ),
            ));
        }
    }
    Ok(CheckReport::pass(SYMPLECTIC_FACTOR_CHECK))
}

/// Picard group as reported: invariant factors and the UFD flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardSummary {
    pub factors: Vec<u64>,
    pub ufd: bool,
}

impl From<&PicardResult> for PicardSummary {
    fn from(r: &PicardResult) -> Self {
        let factors = r.group.factors_u64().expect("Picard invariant factors fit in 64 bits");
        Self { factors, ufd: r.kg_is_ufd }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub group: String,
    pub p: u64,
    pub picard: PicardSummary,
    pub kg_ufd: bool,
    pub regular_ss: bool,
    pub zero_diff_roots: Vec<usize>,
    pub zero_diff_coroots: Vec<usize>,
    pub kg_g: Status,
    pub k_lieg: Status,
    pub s_lieg: Status,
    /// Reason tags of `kg_g`, `k_lieg`, `s_lieg` in that order.
    pub reasons: Vec<Reason>,
    #[serde(skip)]
    pub pic: PicardResult,
}

/// Factoriality verdicts for `K[G]^g`, `K[g]^g` and `S(g)^g`.
///
/// "Derived group simply connected" is read as `Pic(G) = 0`. Checking each
/// Dynkin component separately is not enough: both components of `SO(4)` are
/// simply connected while its derived group is not.
pub fn verdicts(rd: &RootDatum, p: u64) -> Result<VerdictReport, LieCritError> {
    ensure_prime(p)?;
    let pic = picard_group(rd)?;
    let ss = simple_system(rd)?;
    let info = components_with(rd, &ss)?;
    let zero_diff_roots = zero_differential_roots(rd, p);
    let zero_diff_coroots = zero_differential_coroots(rd, p);
    let regular_ss = zero_diff_roots.is_empty();
    let dg_sc = pic.kg_is_ufd;
    let has_c = info.components.iter().any(|c| c.is_type_c_at_least_2());

    let kg_g = if dg_sc && regular_ss {
        Status::proven(Reason::Thm3Main)
    } else if dg_sc && (p != 2 || !has_c) {
        Status::proven(Reason::Thm3RemarkAlt)
    } else if !dg_sc {
        Status::open(Reason::DgNotSc)
    } else {
        Status::open(Reason::NoRegSsTypeC)
    };
    let k_lieg =
        if regular_ss { Status::proven(Reason::Prop4_1) } else { Status::open(Reason::NoRegSsTypeC) };
    let s_lieg = if zero_diff_coroots.is_empty() {
        Status::proven(Reason::Prop4_2)
    } else {
        Status::open(Reason::CorootDiffZero)
    };

    Ok(VerdictReport {
        group: rd.to_string(),
        p,
        picard: PicardSummary::from(&pic),
        kg_ufd: pic.kg_is_ufd,
        regular_ss,
        zero_diff_roots,
        zero_diff_coroots,
        kg_g,
        k_lieg,
        s_lieg,
        reasons: vec![kg_g.reason, k_lieg.reason, s_lieg.reason],
        pic,
    })
}
