//! Group-spec expressions such as `GL(3)xSp(4)` or `SC(E6) x T(1)`, and the
//! preset catalog.

use std::fmt;

use num_traits::ToPrimitive;

use super::cartan::{cartan_matrix, roots_from_cartan, DynkinType, Family};
use super::{RootDataError, RootDatum};

const NAMES: &[&str] = &["GL", "SL", "PGL", "Sp", "PSp", "SO", "PSO", "Spin", "SC", "AD", "T"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isogeny {
    Sc,
    Ad,
}

/// One factor of a group-spec expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Named { name: String, n: usize, isogeny: Option<Isogeny> },
    Sc(DynkinType),
    Ad(DynkinType),
    Torus(usize),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Named { name, n, isogeny } => {
                write!(f, "{name}({n}")?;
                match isogeny {
                    Some(Isogeny::Sc) => write!(f, ",sc")?,
                    Some(Isogeny::Ad) => write!(f, ",ad")?,
                    None => {}
                }
                write!(f, ")")
            }
            Term::Sc(t) => write!(f, "SC({t})"),
            Term::Ad(t) => write!(f, "AD({t})"),
            Term::Torus(r) => write!(f, "T({r})"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn error(&mut self, expected: &str) -> RootDataError {
        let found = self.found();
        RootDataError::Parse { position: self.pos, expected: expected.to_string(), found }
    }

    fn expect(&mut self, c: char) -> Result<(), RootDataError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn ident(&mut self) -> Result<(usize, String), RootDataError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].chars().take_while(char::is_ascii_alphabetic).count();
        if len == 0 {
            return Err(self.error("group name"));
        }
        self.pos += len;
        Ok((start, self.src[start..self.pos].to_string()))
    }

    fn int(&mut self) -> Result<usize, RootDataError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].chars().take_while(char::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("integer"));
        }
        self.pos += len;
        self.src[start..self.pos].parse().map_err(|_| RootDataError::Parse {
            position: start,
            expected: "integer that fits in usize".into(),
            found: self.src[start..self.pos].to_string(),
        })
    }

    fn dynkin(&mut self) -> Result<DynkinType, RootDataError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let family = match self.peek().and_then(Family::from_letter) {
            Some(f) => f,
            None => return Err(self.error("Dynkin type letter A-G")),
        };
        self.pos += 1;
        let rank = self.int()?;
        let t = DynkinType::new(family, rank);
        if !t.is_valid() {
            return Err(RootDataError::BadParameter(format!(
                "no root system of type {t} (at position {start})"
            )));
        }
        Ok(t)
    }
}

/// Parses `expr := term ("x" term)*`.
pub fn parse_group_spec(src: &str) -> Result<Vec<Term>, RootDataError> {
    let mut lx = Lexer { src, pos: 0 };
    let mut terms = vec![parse_term(&mut lx)?];
    loop {
        match lx.peek() {
            None => return Ok(terms),
            Some('x') => {
                lx.pos += 1;
                terms.push(parse_term(&mut lx)?);
            }
            Some(_) => return Err(lx.error("'x' or end of input")),
        }
    }
}

fn parse_term(lx: &mut Lexer<'_>) -> Result<Term, RootDataError> {
    let (start, name) = lx.ident()?;
    if !NAMES.contains(&name.as_str()) {
        return Err(RootDataError::UnknownGroup(format!("{name} (at position {start})")));
    }
    lx.expect('(')?;
    let term = match name.as_str() {
        "SC" => Term::Sc(lx.dynkin()?),
        "AD" => Term::Ad(lx.dynkin()?),
        "T" => Term::Torus(lx.int()?),
        _ => {
            let n = lx.int()?;
            let isogeny = if lx.peek() == Some(',') {
                lx.pos += 1;
                let (_, m) = lx.ident().map_err(|_| lx.error("'sc' or 'ad'"))?;
                match m.as_str() {
                    "sc" => Some(Isogeny::Sc),
                    "ad" => Some(Isogeny::Ad),
                    _ => {
                        return Err(RootDataError::Parse {
                            position: lx.pos - m.len(),
                            expected: "'sc' or 'ad'".into(),
                            found: format!("'{m}'"),
                        })
                    }
                }
            } else {
                None
            };
            Term::Named { name, n, isogeny }
        }
    };
    lx.expect(')')?;
    Ok(term)
}

fn bad(msg: String) -> RootDataError {
    RootDataError::BadParameter(msg)
}

fn unit(n: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = scale;
    v
}

fn combo(n: usize, i: usize, si: i64, j: usize, sj: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] += si;
    v[j] += sj;
    v
}

/// Pairs `(root, coroot)` of the form `+-e_i +- e_j`, `i < j`.
fn long_pairs(n: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                let v = combo(n, i, si, j, sj);
                out.push((v.clone(), v));
            }
        }
    }
    out
}

fn from_pairs(rank: usize, pairs: Vec<(Vec<i64>, Vec<i64>)>) -> RootDatum {
    let (roots, coroots) = pairs.into_iter().unzip();
    RootDatum::new(rank, roots, coroots)
}

fn gl(n: usize) -> RootDatum {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = combo(n, i, 1, j, -1);
                pairs.push((v.clone(), v));
            }
        }
    }
    from_pairs(n, pairs)
}

fn sp(n: usize) -> RootDatum {
    let mut pairs = long_pairs(n);
    for i in 0..n {
        for s in [1, -1] {
            pairs.push((unit(n, i, 2 * s), unit(n, i, s)));
        }
    }
    from_pairs(n, pairs)
}

fn so_odd(n: usize) -> RootDatum {
    let mut pairs = long_pairs(n);
    for i in 0..n {
        for s in [1, -1] {
            pairs.push((unit(n, i, s), unit(n, i, 2 * s)));
        }
    }
    from_pairs(n, pairs)
}

fn so_even(n: usize) -> RootDatum {
    from_pairs(n, long_pairs(n))
}

fn dn_type(n: usize) -> DynkinType {
    DynkinType::new(Family::D, n)
}

/// Simply connected datum: `X` has the fundamental weights as basis, so a root
/// with simple-root coordinates `b` has character coordinates `b^T C`.
pub(crate) fn sc_datum(t: DynkinType) -> Result<RootDatum, RootDataError> {
    let c = cartan_matrix(t)?;
    let sys = roots_from_cartan(&c)?;
    let n = t.rank;
    let cm = |i: usize, j: usize| c[(i, j)].to_i64().unwrap();
    let roots =
        sys.roots.iter().map(|b| (0..n).map(|k| (0..n).map(|j| b[j] * cm(j, k)).sum()).collect()).collect();
    Ok(RootDatum::new(n, roots, sys.coroots))
}

/// Adjoint datum: `X` has the simple roots as basis, and a coroot with
/// simple-coroot coordinates `g` has dual coordinates `C g`.
pub(crate) fn ad_datum(t: DynkinType) -> Result<RootDatum, RootDataError> {
    let c = cartan_matrix(t)?;
    let sys = roots_from_cartan(&c)?;
    let n = t.rank;
    let cm = |i: usize, j: usize| c[(i, j)].to_i64().unwrap();
    let coroots =
        sys.coroots.iter().map(|g| (0..n).map(|k| (0..n).map(|j| cm(k, j) * g[j]).sum()).collect()).collect();
    Ok(RootDatum::new(n, sys.roots, coroots))
}

fn isogenous(t: DynkinType, iso: Isogeny) -> Result<RootDatum, RootDataError> {
    match iso {
        Isogeny::Sc => sc_datum(t),
        Isogeny::Ad => ad_datum(t),
    }
}

impl Term {
    pub fn datum(&self) -> Result<RootDatum, RootDataError> {
        let rd = match self {
            Term::Sc(t) => sc_datum(*t)?,
            Term::Ad(t) => ad_datum(*t)?,
            Term::Torus(r) => RootDatum::torus(*r),
            Term::Named { name, n, isogeny } => named(name, *n, *isogeny)?,
        };
        Ok(rd.with_label(self.to_string()))
    }
}

fn named(name: &str, m: usize, iso: Option<Isogeny>) -> Result<RootDatum, RootDataError> {
    let a_type = |m: usize| -> Result<DynkinType, RootDataError> {
        if m < 2 {
            Err(bad(format!("{name}({m}) needs size at least 2")))
        } else {
            Ok(DynkinType::new(Family::A, m - 1))
        }
    };
    let half = |m: usize| -> Result<usize, RootDataError> {
        if m % 2 != 0 || m == 0 {
            Err(bad(format!("{name}({m}) needs a positive even size")))
        } else {
            Ok(m / 2)
        }
    };
    // Type of SO(m) / Spin(m); needs m >= 3.
    let bd_type = |m: usize| -> Result<DynkinType, RootDataError> {
        if m < 3 {
            Err(bad(format!("{name}({m}) has no roots; use T(1)")))
        } else if m % 2 == 1 {
            Ok(DynkinType::new(Family::B, m / 2))
        } else {
            Ok(dn_type(m / 2))
        }
    };
    match name {
        "GL" => {
            if iso.is_some() {
                return Err(bad("GL takes no isogeny modifier".into()));
            }
            if m == 0 {
                return Err(bad("GL(0) is not a group of positive rank".into()));
            }
            Ok(gl(m))
        }
        "SL" => isogenous(a_type(m)?, iso.unwrap_or(Isogeny::Sc)),
        "PGL" => isogenous(a_type(m)?, iso.unwrap_or(Isogeny::Ad)),
        "Sp" => {
            let n = half(m)?;
            match iso {
                Some(Isogeny::Ad) => ad_datum(DynkinType::new(Family::C, n)),
                _ => Ok(sp(n)),
            }
        }
        "PSp" => {
            let n = half(m)?;
            match iso {
                Some(Isogeny::Sc) => Ok(sp(n)),
                _ => ad_datum(DynkinType::new(Family::C, n)),
            }
        }
        "SO" => {
            if m == 2 && iso.is_none() {
                return Ok(RootDatum::torus(1));
            }
            let t = bd_type(m)?;
            match iso {
                Some(i) => isogenous(t, i),
                None if m % 2 == 1 => Ok(so_odd(m / 2)),
                None => Ok(so_even(m / 2)),
            }
        }
        "PSO" => {
            let n = half(m)?;
            if n < 2 {
                return Err(bad(format!("PSO({m}) needs size at least 4")));
            }
            isogenous(dn_type(n), iso.unwrap_or(Isogeny::Ad))
        }
        "Spin" => isogenous(bd_type(m)?, iso.unwrap_or(Isogeny::Sc)),
        other => Err(RootDataError::UnknownGroup(other.to_string())),
    }
}

/// Builds the root datum of a group-spec expression.
pub fn preset(spec: &str) -> Result<RootDatum, RootDataError> {
    let terms = parse_group_spec(spec)?;
    let mut it = terms.iter();
    let mut rd = it.next().expect("parser returns at least one term").datum()?;
    for t in it {
        rd = rd.product(&t.datum()?);
    }
    Ok(rd)
}

const CATALOG: &[&str] = &[
    "GL(1)", "GL(2)", "GL(3)", "GL(4)", "GL(5)",
    "SL(2)", "SL(3)", "SL(4)", "SL(5)", "SL(6)",
    "PGL(2)", "PGL(3)", "PGL(4)", "PGL(5)", "PGL(6)",
    "Sp(4)", "Sp(6)", "Sp(8)",
    "PSp(4)", "PSp(6)", "PSp(8)",
    "SO(3)", "SO(4)", "SO(5)", "SO(6)", "SO(7)", "SO(8)", "SO(9)", "SO(10)",
    "PSO(6)", "PSO(8)", "PSO(10)",
    "Spin(6)", "Spin(7)", "Spin(8)", "Spin(9)", "Spin(10)",
    "T(1)", "T(2)",
    "SC(G2)", "SC(F4)", "SC(E6)", "AD(E6)", "SC(E7)", "AD(E7)", "SC(E8)",
    "GL(3)xSp(4)", "SL(2)xSp(4)", "GL(2)xT(1)", "PGL(2)xSL(3)", "SO(5)xSp(6)",
];

/// Names of the preset groups.
pub fn catalog() -> &'static [&'static str] {
    CATALOG
}

#[cfg(test)]
mod tests {
    use super::super::{components, simple_system, validate};
    use super::*;

    #[test]
    fn catalog_presets_validate() {
        for spec in catalog() {
            let rd = preset(spec).unwrap();
            assert!(validate(&rd).is_empty(), "{spec}: {:?}", validate(&rd));
            assert_eq!(rd.label(), Some(*spec));
        }
    }

    #[test]
    fn root_counts_match_types() {
        for spec in catalog() {
            let rd = preset(spec).unwrap();
            let ss = simple_system(&rd).unwrap();
            assert_eq!(rd.num_roots(), 2 * ss.positive.len(), "{spec}");
            let info = components(&rd).unwrap();
            let expected: usize = info.components.iter().map(|c| c.dynkin.root_count()).sum();
            assert_eq!(rd.num_roots(), expected, "{spec}");
        }
    }

    #[test]
    fn sl2_preset() {
        let rd = preset("SL(2)").unwrap();
        assert_eq!(rd.rank(), 1);
        assert_eq!(rd.roots(), &[vec![2], vec![-2]]);
        assert_eq!(rd.coroots(), &[vec![1], vec![-1]]);
    }

    #[test]
    fn sp4_and_products() {
        assert_eq!(preset("Sp(4)").unwrap().num_roots(), 8);
        let rd = preset("GL(2)xT(1)").unwrap();
        assert_eq!((rd.rank(), rd.num_roots()), (3, 2));
        assert_eq!(rd.label(), Some("GL(2)xT(1)"));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(preset(" GL ( 3 ) x  Sp(4 ) ").unwrap(), preset("GL(3)xSp(4)").unwrap().with_label("GL(3)xSp(4)"));
        assert_eq!(parse_group_spec("SC( E 6 )").unwrap(), vec![Term::Sc(DynkinType::new(Family::E, 6))]);
    }

    #[test]
    fn parse_errors_carry_position() {
        match preset("GL(3)xSp(") {
            Err(RootDataError::Parse { position, expected, .. }) => {
                assert_eq!(position, 9);
                assert_eq!(expected, "integer");
            }
            other => panic!("{other:?}"),
        }
        match preset("GL(3) y") {
            Err(RootDataError::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(preset("SL(3,xx)"), Err(RootDataError::Parse { .. })));
        assert!(matches!(preset("SC(H3)"), Err(RootDataError::Parse { .. })));
        assert!(matches!(preset(""), Err(RootDataError::Parse { position: 0, .. })));
    }

    #[test]
    fn unknown_names_and_parameters() {
        assert!(matches!(preset("SU(3)"), Err(RootDataError::UnknownGroup(_))));
        assert!(matches!(preset("Sp(5)"), Err(RootDataError::BadParameter(_))));
        assert!(matches!(preset("SC(E5)"), Err(RootDataError::BadParameter(_))));
        assert!(matches!(preset("GL(3,sc)"), Err(RootDataError::BadParameter(_))));
    }

    #[test]
    fn isogeny_modifiers() {
        assert_eq!(preset("SL(3,ad)").unwrap().roots(), preset("PGL(3)").unwrap().roots());
        assert_eq!(preset("SO(7,sc)").unwrap().roots(), preset("Spin(7)").unwrap().roots());
        assert_eq!(preset("Sp(6,ad)").unwrap().roots(), preset("PSp(6)").unwrap().roots());
    }
}
