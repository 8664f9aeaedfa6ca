//! Root data of connected reductive groups.
//!
//! Characters and cocharacters are both identified with `Z^rank` through dual
//! bases, so the pairing `<chi, lambda>` is the dot product of coordinate
//! vectors.

mod cartan;
mod parse;

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intlat::{is_surjective, row_lattices_equal, IntMatrix};

pub use cartan::{cartan_matrix, roots_from_cartan, DynkinType, Family, RootSystem, MAX_CLOSURE_ROOTS};
pub use parse::{catalog, parse_group_spec, preset, Isogeny, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("parse error at position {position}: expected {expected}, found {found}")]
    Parse { position: usize, expected: String, found: String },
    #[error("unknown group name `{0}`")]
    UnknownGroup(String),
    #[error("unsupported group parameter: {0}")]
    BadParameter(String),
    #[error("invalid root datum: {}", render_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("reflection closure exceeded {0} roots")]
    ClosureBound(usize),
    #[error("malformed root datum file: {0}")]
    File(String),
}

fn render_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// `<a, b>` for a character `a` and a cocharacter `b` in dual coordinates.
pub fn pairing(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A root datum: roots in `X(T) = Z^rank`, coroots in `Y(T) = Z^rank`,
/// with `coroots[k]` the coroot of `roots[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// On-disk form of a root datum (`{"rank": .., "roots": [..], "coroots": [..]}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumFile {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
}

impl RootDatum {
    /// Unchecked constructor; see [`validate`].
    pub fn new(rank: usize, roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>) -> Self {
        Self { rank, roots, coroots, label: None }
    }

    pub fn torus(rank: usize) -> Self {
        Self::new(rank, Vec::new(), Vec::new())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Block-diagonal product: the character lattice of `self x other` is
    /// `X(self) + X(other)`.
    pub fn product(&self, other: &RootDatum) -> RootDatum {
        let rank = self.rank + other.rank;
        let pad_right = |v: &Vec<i64>| {
            let mut w = v.clone();
            w.resize(rank, 0);
            w
        };
        let pad_left = |v: &Vec<i64>| {
            let mut w = vec![0; self.rank];
            w.extend_from_slice(v);
            w
        };
        let roots = self.roots.iter().map(pad_right).chain(other.roots.iter().map(pad_left)).collect();
        let coroots =
            self.coroots.iter().map(pad_right).chain(other.coroots.iter().map(pad_left)).collect();
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        RootDatum { rank, roots, coroots, label }
    }

    pub fn from_file(file: RootDatumFile) -> Self {
        Self::new(file.rank, file.roots, file.coroots)
    }

    pub fn to_file(&self) -> RootDatumFile {
        RootDatumFile { rank: self.rank, roots: self.roots.clone(), coroots: self.coroots.clone() }
    }

    pub fn from_json(text: &str) -> Result<Self, RootDataError> {
        let file: RootDatumFile =
            serde_json::from_str(text).map_err(|e| RootDataError::File(e.to_string()))?;
        Ok(Self::from_file(file))
    }

    /// Matrix with entry `(e, i) = <e-th basis character, alpha_i^vee>` for the
    /// simple coroots of `simple`.
    pub fn pairing_matrix(&self, simple: &SimpleSystem) -> IntMatrix {
        let cols: Vec<Vec<i64>> = simple.indices.iter().map(|&k| self.coroots[k].clone()).collect();
        let rows: Vec<Vec<i64>> =
            (0..self.rank).map(|e| cols.iter().map(|c| c[e]).collect()).collect();
        IntMatrix::from_rows_with_cols(&rows, cols.len())
    }

    fn root_index(&self) -> HashMap<&[i64], usize> {
        self.roots.iter().enumerate().map(|(k, r)| (r.as_slice(), k)).collect()
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "<root datum of rank {} with {} roots>", self.rank, self.roots.len()),
        }
    }
}

/// A failed root-datum axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CountMismatch { roots: usize, coroots: usize },
    RootLength { index: usize, len: usize },
    CorootLength { index: usize, len: usize },
    ZeroRoot { index: usize },
    PairingNotTwo { index: usize, value: i64 },
    Duplicate { index: usize, other: usize },
    NotReduced { index: usize, other: usize },
    NotClosedUnderNegation { index: usize },
    NotReflectionClosed { reflecting: usize, reflected: usize },
    CorootMismatch { reflecting: usize, reflected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match *self {
            CountMismatch { roots, coroots } => {
                write!(f, "{roots} roots but {coroots} coroots")
            }
            RootLength { index, len } => write!(f, "root {index}: wrong length {len}"),
            CorootLength { index, len } => write!(f, "coroot {index}: wrong length {len}"),
            ZeroRoot { index } => write!(f, "root {index}: zero vector"),
            PairingNotTwo { index, value } => {
                write!(f, "root {index}: ⟨α,α^∨⟩ ≠ 2 (got {value})")
            }
            Duplicate { index, other } => write!(f, "root {index}: duplicate of root {other}"),
            NotReduced { index, other } => {
                write!(f, "root {index}: not reduced (proportional to root {other})")
            }
            NotClosedUnderNegation { index } => {
                write!(f, "root {index}: not closed under negation")
            }
            NotReflectionClosed { reflecting, reflected } => write!(
                f,
                "root {reflected}: reflection in root {reflecting} is not a root (not reflection-closed)"
            ),
            CorootMismatch { reflecting, reflected } => write!(
                f,
                "coroot {reflected}: reflection in root {reflecting} disagrees with the coroot of the reflected root"
            ),
        }
    }
}

/// Checks the root-datum axioms. An empty list means the datum is valid.
pub fn validate(rd: &RootDatum) -> Vec<Violation> {
    let mut out = Vec::new();
    if rd.roots.len() != rd.coroots.len() {
        out.push(Violation::CountMismatch { roots: rd.roots.len(), coroots: rd.coroots.len() });
    }
    for (index, r) in rd.roots.iter().enumerate() {
        if r.len() != rd.rank {
            out.push(Violation::RootLength { index, len: r.len() });
        }
    }
    for (index, c) in rd.coroots.iter().enumerate() {
        if c.len() != rd.rank {
            out.push(Violation::CorootLength { index, len: c.len() });
        }
    }
    if !out.is_empty() {
        return out;
    }

    for (index, (r, c)) in rd.roots.iter().zip(&rd.coroots).enumerate() {
        if r.iter().all(|&x| x == 0) {
            out.push(Violation::ZeroRoot { index });
        }
        let value = pairing(r, c);
        if value != 2 {
            out.push(Violation::PairingNotTwo { index, value });
        }
    }

    for (i, a) in rd.roots.iter().enumerate() {
        let Some(k) = a.iter().position(|&x| x != 0) else { continue };
        for (j, b) in rd.roots.iter().enumerate().skip(i + 1) {
            // b proportional to a  <=>  a_k * b == b_k * a
            let proportional = a.iter().zip(b).all(|(&x, &y)| a[k] * y == b[k] * x);
            if !proportional || b[k] == 0 {
                continue;
            }
            if b[k] == a[k] {
                out.push(Violation::Duplicate { index: j, other: i });
            } else if b[k] != -a[k] {
                out.push(Violation::NotReduced { index: j, other: i });
            }
        }
    }

    let index = rd.root_index();
    for (i, (a, ac)) in rd.roots.iter().zip(&rd.coroots).enumerate() {
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        match index.get(neg.as_slice()) {
            Some(&j) if rd.coroots[j].iter().zip(ac).all(|(x, y)| *x == -y) => {}
            _ => out.push(Violation::NotClosedUnderNegation { index: i }),
        }
        for (j, (b, bc)) in rd.roots.iter().zip(&rd.coroots).enumerate() {
            let n = pairing(b, ac);
            let image: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - n * y).collect();
            match index.get(image.as_slice()) {
                None => out.push(Violation::NotReflectionClosed { reflecting: i, reflected: j }),
                Some(&k) => {
                    let m = pairing(a, bc);
                    let co_image: Vec<i64> = bc.iter().zip(ac).map(|(x, y)| x - m * y).collect();
                    if rd.coroots[k] != co_image {
                        out.push(Violation::CorootMismatch { reflecting: i, reflected: j });
                    }
                }
            }
        }
    }
    out
}

fn ensure_valid(rd: &RootDatum) -> Result<(), RootDataError> {
    let v = validate(rd);
    if v.is_empty() {
        Ok(())
    } else {
        Err(RootDataError::Invalid(v))
    }
}

/// Simple roots under the fixed positivity rule, with their Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleSystem {
    /// Positions of `alpha_1, ..., alpha_s` in the root list, increasing.
    pub indices: Vec<usize>,
    /// `cartan[(i, j)] = <alpha_i, alpha_j^vee>`.
    pub cartan: IntMatrix,
    /// Positions of the positive roots in the root list, increasing.
    pub positive: Vec<usize>,
}

impl SimpleSystem {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Positivity functional: weights `(N^{r-1}, ..., N, 1)` with
/// `N = 1 + max |coordinate|`. Since `N` exceeds every coordinate magnitude
/// this orders roots like the lexicographic rule "first nonzero coordinate
/// positive", and it never vanishes on a nonzero vector.
fn positivity_weights(rd: &RootDatum) -> Vec<BigInt> {
    let n = 1 + rd.roots.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let base = BigInt::from(n);
    let mut w = Vec::with_capacity(rd.rank);
    let mut acc = BigInt::from(1);
    for _ in 0..rd.rank {
        w.push(acc.clone());
        acc *= &base;
    }
    w.reverse();
    w
}

pub fn is_positive_root(rd: &RootDatum, k: usize) -> bool {
    let w = positivity_weights(rd);
    weighted(&w, &rd.roots[k]) > BigInt::from(0)
}

fn weighted(w: &[BigInt], v: &[i64]) -> BigInt {
    w.iter().zip(v).map(|(a, &b)| a * b).sum()
}

pub fn simple_system(rd: &RootDatum) -> Result<SimpleSystem, RootDataError> {
    ensure_valid(rd)?;
    Ok(simple_system_unchecked(rd))
}

fn simple_system_unchecked(rd: &RootDatum) -> SimpleSystem {
    let w = positivity_weights(rd);
    let zero = BigInt::from(0);
    let positive: Vec<usize> =
        (0..rd.roots.len()).filter(|&k| weighted(&w, &rd.roots[k]) > zero).collect();
    let pos_set: HashSet<&[i64]> = positive.iter().map(|&k| rd.roots[k].as_slice()).collect();

    let indices: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&k| {
            let beta = &rd.roots[k];
            !positive.iter().any(|&j| {
                let diff: Vec<i64> = beta.iter().zip(&rd.roots[j]).map(|(x, y)| x - y).collect();
                pos_set.contains(diff.as_slice())
            })
        })
        .collect();

    let s = indices.len();
    let mut cartan = IntMatrix::zeros(s, s);
    for (i, &a) in indices.iter().enumerate() {
        for (j, &b) in indices.iter().enumerate() {
            cartan[(i, j)] = BigInt::from(pairing(&rd.roots[a], &rd.coroots[b]));
        }
    }
    SimpleSystem { indices, cartan, positive }
}

/// Coordinates of every root in the basis of simple roots, indexed like the
/// root list. Fails if some positive root is not reachable from the simple
/// roots by adding simple roots one at a time.
pub fn simple_root_coordinates(
    rd: &RootDatum,
    simple: &SimpleSystem,
) -> Result<Vec<Vec<i64>>, RootDataError> {
    let s = simple.len();
    let index = rd.root_index();
    let mut coords: Vec<Option<Vec<i64>>> = vec![None; rd.roots.len()];
    for (i, &k) in simple.indices.iter().enumerate() {
        let mut e = vec![0; s];
        e[i] = 1;
        coords[k] = Some(e);
    }
    loop {
        let mut progressed = false;
        for &k in &simple.positive {
            if coords[k].is_some() {
                continue;
            }
            for (i, &a) in simple.indices.iter().enumerate() {
                let diff: Vec<i64> = rd.roots[k].iter().zip(&rd.roots[a]).map(|(x, y)| x - y).collect();
                if let Some(c) = index.get(diff.as_slice()).and_then(|&j| coords[j].clone()) {
                    let mut c = c;
                    c[i] += 1;
                    coords[k] = Some(c);
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let mut out = Vec::with_capacity(rd.roots.len());
    for (k, r) in rd.roots.iter().enumerate() {
        let c = match &coords[k] {
            Some(c) => c.clone(),
            None => {
                let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                let j = index[neg.as_slice()];
                match &coords[j] {
                    Some(c) => c.iter().map(|x| -x).collect(),
                    None => {
                        return Err(RootDataError::NotFiniteType(format!(
                            "root {k} is not an integral combination of simple roots"
                        )))
                    }
                }
            }
        };
        out.push(c);
    }
    Ok(out)
}

/// One connected component of the Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Positions within the simple system (not the root list).
    pub simple: Vec<usize>,
    pub dynkin: DynkinType,
    pub simply_connected: bool,
    pub adjoint: bool,
}

impl Component {
    /// `A_1` (which is `C_1 = Sp_2`) or `C_n` with `n >= 2`.
    pub fn is_type_c_like(&self) -> bool {
        matches!(self.dynkin.family, Family::A) && self.dynkin.rank == 1
            || matches!(self.dynkin.family, Family::C)
    }

    pub fn is_type_c_at_least_2(&self) -> bool {
        matches!(self.dynkin.family, Family::C) && self.dynkin.rank >= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub components: Vec<Component>,
}

impl ComponentInfo {
    /// Component containing simple-system position `i`.
    pub fn component_of_simple(&self, i: usize) -> Option<usize> {
        self.components.iter().position(|c| c.simple.contains(&i))
    }

    pub fn types(&self) -> Vec<String> {
        self.components.iter().map(|c| c.dynkin.to_string()).collect()
    }
}

/// Splits the simple roots into Dynkin components, classifies each one and
/// computes its simply-connected and adjoint flags.
///
/// A component is simply connected when the restriction of the pairing map
/// to its simple coroots is onto `Z^{s_c}`, and adjoint when that image is
/// the lattice spanned by the component's Cartan rows. `B_1`/`C_1` are
/// reported as `A_1`. The rank-2 double bond is reported as `B_2` when the
/// component is adjoint but not simply connected, and as `C_2` otherwise.
pub fn components(rd: &RootDatum) -> Result<ComponentInfo, RootDataError> {
    let simple = simple_system(rd)?;
    components_with(rd, &simple)
}

pub fn components_with(rd: &RootDatum, simple: &SimpleSystem) -> Result<ComponentInfo, RootDataError> {
    let pairing = rd.pairing_matrix(simple);
    let mut out = Vec::new();
    for nodes in cartan::connected_components(&simple.cartan) {
        let mut dynkin = cartan::classify(&simple.cartan, &nodes)?;
        let image = pairing.select_columns(&nodes);
        let local_cartan = simple.cartan.select_columns(&nodes);
        let rows: Vec<usize> = nodes.clone();
        let cartan_rows = local_cartan.transpose().select_columns(&rows).transpose();
        let simply_connected = is_surjective(&image);
        let adjoint = row_lattices_equal(&image, &cartan_rows);
        if dynkin == DynkinType::new(Family::C, 2) && adjoint && !simply_connected {
            dynkin = DynkinType::new(Family::B, 2);
        }
        out.push(Component { simple: nodes, dynkin, simply_connected, adjoint });
    }
    Ok(ComponentInfo { components: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl2() -> RootDatum {
        RootDatum::new(2, vec![vec![1, -1], vec![-1, 1]], vec![vec![1, -1], vec![-1, 1]])
    }

    #[test]
    fn gl2_is_valid() {
        assert!(validate(&gl2()).is_empty());
    }

    #[test]
    fn scaled_coroot_breaks_pairing() {
        let mut rd = gl2();
        rd.coroots[0] = vec![2, -2];
        let v = validate(&rd);
        assert!(v.contains(&Violation::PairingNotTwo { index: 0, value: 4 }));
        assert!(v.iter().any(|x| x.to_string().contains("⟨α,α^∨⟩ ≠ 2")));
    }

    #[test]
    fn missing_negative_root() {
        let rd = RootDatum::new(1, vec![vec![2]], vec![vec![1]]);
        let v = validate(&rd);
        assert!(v.iter().any(|x| x.to_string().contains("not closed under negation")));
    }

    #[test]
    fn non_reduced_and_duplicates_are_reported() {
        let rd = RootDatum::new(
            1,
            vec![vec![1], vec![-1], vec![2], vec![-2]],
            vec![vec![2], vec![-2], vec![1], vec![-1]],
        );
        let v = validate(&rd);
        assert!(v.iter().any(|x| matches!(x, Violation::NotReduced { .. })));
        let rd = RootDatum::new(1, vec![vec![2], vec![2]], vec![vec![1], vec![1]]);
        assert!(validate(&rd).iter().any(|x| matches!(x, Violation::Duplicate { .. })));
    }

    #[test]
    fn length_problems_short_circuit() {
        let rd = RootDatum::new(2, vec![vec![1]], vec![vec![1, 1], vec![0, 0]]);
        let v = validate(&rd);
        assert!(v.contains(&Violation::CountMismatch { roots: 1, coroots: 2 }));
        assert!(v.contains(&Violation::RootLength { index: 0, len: 1 }));
    }

    #[test]
    fn gl2_simple_system() {
        let ss = simple_system(&gl2()).unwrap();
        assert_eq!(ss.indices, vec![0]);
        assert_eq!(ss.cartan, IntMatrix::from_rows(&[[2]]));
    }

    #[test]
    fn sp4_simple_system_by_enumeration() {
        let rd = preset("Sp(4)").unwrap();
        let ss = simple_system(&rd).unwrap();
        let pos: HashSet<Vec<i64>> = ss.positive.iter().map(|&k| rd.roots()[k].clone()).collect();
        let expect: HashSet<Vec<i64>> =
            [vec![1, -1], vec![0, 2], vec![1, 1], vec![2, 0]].into_iter().collect();
        assert_eq!(pos, expect);
        let simples: HashSet<Vec<i64>> = ss.indices.iter().map(|&k| rd.roots()[k].clone()).collect();
        assert_eq!(simples, [vec![1, -1], vec![0, 2]].into_iter().collect());
        // C_2 up to simultaneous reordering of rows and columns
        let c = &ss.cartan;
        let (a, b) = (&c[(0, 1)], &c[(1, 0)]);
        let mut off = [a.clone(), b.clone()];
        off.sort();
        assert_eq!(off, [BigInt::from(-2), BigInt::from(-1)]);
    }

    #[test]
    fn torus_has_empty_simple_system() {
        let ss = simple_system(&RootDatum::torus(2)).unwrap();
        assert!(ss.is_empty());
        assert_eq!(ss.cartan.rows(), 0);
    }

    #[test]
    fn simple_system_rejects_invalid() {
        let rd = RootDatum::new(1, vec![vec![2]], vec![vec![1]]);
        assert!(matches!(simple_system(&rd), Err(RootDataError::Invalid(_))));
    }

    #[test]
    fn component_examples() {
        let info = components(&preset("Sp(6)").unwrap()).unwrap();
        assert_eq!(info.types(), vec!["C3"]);
        let info = components(&preset("SL(2)").unwrap()).unwrap();
        assert_eq!(info.types(), vec!["A1"]);
        assert!(info.components[0].is_type_c_like());
        let mut t = components(&preset("GL(3)xSp(4)").unwrap()).unwrap().types();
        t.sort();
        assert_eq!(t, vec!["A2", "C2"]);
        assert_eq!(components(&preset("SO(5)").unwrap()).unwrap().types(), vec!["B2"]);
        assert_eq!(components(&preset("SO(7)").unwrap()).unwrap().types(), vec!["B3"]);
        assert_eq!(components(&preset("PSp(6)").unwrap()).unwrap().types(), vec!["C3"]);
    }

    #[test]
    fn simple_coordinates_are_sign_coherent() {
        for spec in ["Sp(6)", "SC(G2)", "AD(F4)", "GL(4)", "SO(8)"] {
            let rd = preset(spec).unwrap();
            let ss = simple_system(&rd).unwrap();
            let coords = simple_root_coordinates(&rd, &ss).unwrap();
            for (k, c) in coords.iter().enumerate() {
                let positive = ss.positive.contains(&k);
                assert!(c.iter().all(|&x| if positive { x >= 0 } else { x <= 0 }), "{spec}: root {k}");
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let rd = preset("Sp(4)").unwrap();
        let text = serde_json::to_string(&rd.to_file()).unwrap();
        let back = RootDatum::from_json(&text).unwrap();
        assert_eq!(back.roots(), rd.roots());
        assert!(matches!(RootDatum::from_json("{\"rank\": 1}"), Err(RootDataError::File(_))));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn dynkin() -> impl Strategy<Value = DynkinType> {
        prop_oneof![
            (1usize..=6).prop_map(|n| DynkinType::new(Family::A, n)),
            (2usize..=5).prop_map(|n| DynkinType::new(Family::B, n)),
            (2usize..=5).prop_map(|n| DynkinType::new(Family::C, n)),
            (3usize..=6).prop_map(|n| DynkinType::new(Family::D, n)),
            (6usize..=7).prop_map(|n| DynkinType::new(Family::E, n)),
            Just(DynkinType::new(Family::F, 4)),
            Just(DynkinType::new(Family::G, 2)),
        ]
    }

    fn catalog_entry() -> impl Strategy<Value = &'static str> {
        prop::sample::select(catalog())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generated_data_validate(t in dynkin(), ad in any::<bool>()) {
            let spec = format!("{}({t})", if ad { "AD" } else { "SC" });
            let rd = preset(&spec).unwrap();
            prop_assert!(validate(&rd).is_empty(), "{spec}: {:?}", validate(&rd));
            prop_assert_eq!(rd.num_roots(), t.root_count());
            let ss = simple_system(&rd).unwrap();
            prop_assert_eq!(ss.positive.len() * 2, rd.num_roots());
            prop_assert_eq!(ss.len(), t.rank);
            prop_assert_eq!(components(&rd).unwrap().components.len(), 1);
        }

        #[test]
        fn products_validate_and_count_roots(a in catalog_entry(), b in catalog_entry()) {
            let (x, y) = (preset(a).unwrap(), preset(b).unwrap());
            let xy = x.product(&y);
            prop_assert!(validate(&xy).is_empty());
            prop_assert_eq!(xy.num_roots(), x.num_roots() + y.num_roots());
            prop_assert_eq!(xy.rank(), x.rank() + y.rank());
            let info = components(&xy).unwrap();
            let expected: usize = components(&x).unwrap().components.len() + components(&y).unwrap().components.len();
            prop_assert_eq!(info.components.len(), expected);
        }

        #[test]
        fn simple_system_is_deterministic(a in catalog_entry()) {
            let rd = preset(a).unwrap();
            let first = simple_system(&rd).unwrap();
            let again = simple_system(&preset(a).unwrap()).unwrap();
            prop_assert_eq!(&first, &again);
            let json = serde_json::to_string(&rd.to_file()).unwrap();
            let back = RootDatum::from_json(&json).unwrap();
            prop_assert_eq!(simple_system(&back).unwrap(), first);
        }
    }
}
