//! Symbolic checks on `K[SL_n]` over `F_p` for small `n`: the conjugation
//! action of `sl_n` by derivations, exterior-power traces, Frobenius
//! relations with last-column elimination, invariant spaces by filtration
//! level, generation of the invariants, and semi-invariants.
//!
//! Polynomials live in `F_p[x11, x12, ..., xnn]` and are reduced modulo
//! `det - 1`, whose grlex leading monomial is `x11 x22 ... xnn`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::polyfp::{Derivation, FpMatrix, Monomial, Poly, PolyError, PolyRing};
use crate::report::CheckReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlnError {
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("trace of x is {trace} mod {p}, expected 0")]
    NonzeroTrace { trace: u32, p: u32 },
    #[error("expected a {n}x{n} matrix")]
    Shape { n: usize },
    #[error("index {i} out of range 1..={n}")]
    Range { i: usize, n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A named element of the Lie algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
}

pub struct SlnContext {
    n: usize,
    p: u32,
    ring: Arc<PolyRing>,
    vars: Vec<Vec<Poly>>,
    det: Poly,
    relation: Poly,
    lie_basis: Vec<LieElement>,
    derivations: Vec<Derivation>,
}

/// Determinant by cofactor expansion along the first row.
pub fn poly_det(m: &[Vec<Poly>], ring: &Arc<PolyRing>) -> Poly {
    let k = m.len();
    match k {
        0 => Poly::one(ring),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero(ring);
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * &poly_det(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sum of the `i x i` principal minors of `m`.
fn principal_minor_sum(m: &[Vec<Poly>], i: usize, ring: &Arc<PolyRing>) -> Poly {
    let mut acc = Poly::zero(ring);
    for s in subsets(m.len(), i) {
        let sub: Vec<Vec<Poly>> = s.iter().map(|&r| s.iter().map(|&c| m[r][c].clone()).collect()).collect();
        acc = &acc + &poly_det(&sub, ring);
    }
    acc
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>], p: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<i64>().rem_euclid(p)).collect()).collect()
}

impl SlnContext {
    pub const MAX_N: usize = 3;

    pub fn new(n: usize, p: u64) -> Result<Self, SlnError> {
        if !(2..=Self::MAX_N).contains(&n) {
            return Err(SlnError::Resource(format!("n = {n} outside 2..={}", Self::MAX_N)));
        }
        let names = (1..=n).flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}"))).collect();
        let ring = PolyRing::new(p, names)?;
        let vars: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| Poly::var(&ring, i * n + j)).collect()).collect();
        let det = poly_det(&vars, &ring);
        let relation = &det - &Poly::one(&ring);

        let mut lie_basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut m = vec![vec![0; n]; n];
                    m[i][j] = 1;
                    lie_basis.push(LieElement { name: format!("E{}{}", i + 1, j + 1), matrix: m });
                }
            }
        }
        for i in 0..n - 1 {
            let mut m = vec![vec![0; n]; n];
            m[i][i] = 1;
            m[i + 1][i + 1] = -1;
            lie_basis.push(LieElement { name: format!("H{}", i + 1), matrix: m });
        }
        let mut ctx = SlnContext {
            n,
            p: ring.p(),
            ring,
            vars,
            det,
            relation,
            lie_basis,
            derivations: Vec::new(),
        };
        ctx.derivations =
            ctx.lie_basis.iter().map(|x| ctx.conj_derivation(&x.matrix)).collect::<Result<_, _>>()?;
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// `x_ij` with 1-based indices.
    pub fn var(&self, i: usize, j: usize) -> &Poly {
        &self.vars[i - 1][j - 1]
    }

    pub fn det(&self) -> &Poly {
        &self.det
    }

    /// `det - 1`.
    pub fn relation(&self) -> &Poly {
        &self.relation
    }

    pub fn lie_basis(&self) -> &[LieElement] {
        &self.lie_basis
    }

    pub fn basis_derivations(&self) -> &[Derivation] {
        &self.derivations
    }

    /// Derivation of the conjugation action of `x`: on coordinates,
    /// `D(x_ij) = sum_k (x_kj x_ik - x_ik x_kj)`, the `(i, j)` entry of
    /// `g x - x g`.
    pub fn conj_derivation(&self, x: &[Vec<i64>]) -> Result<Derivation, SlnError> {
        let n = self.n;
        if x.len() != n || x.iter().any(|r| r.len() != n) {
            return Err(SlnError::Shape { n });
        }
        let trace = crate::polyfp::reduce_i64((0..n).map(|i| x[i][i]).sum(), self.p);
        if trace != 0 {
            return Err(SlnError::NonzeroTrace { trace, p: self.p });
        }
        let mut images = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut img = Poly::zero(&self.ring);
                for k in 0..n {
                    if x[k][j] != 0 {
                        img = &img + &self.vars[i][k].scale(x[k][j]);
                    }
                    if x[i][k] != 0 {
                        img = &img - &self.vars[k][j].scale(x[i][k]);
                    }
                }
                images.push(img);
            }
        }
        Ok(Derivation::new(images)?)
    }

    /// `s_i = tr(wedge^i X)`, the sum of the `i x i` principal minors.
    pub fn exterior_trace(&self, i: usize) -> Result<Poly, SlnError> {
        if !(1..=self.n).contains(&i) {
            return Err(SlnError::Range { i, n: self.n });
        }
        Ok(principal_minor_sum(&self.vars, i, &self.ring))
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly, SlnError> {
        Ok(f.normal_form(&self.relation)?)
    }

    /// Whether every basis element maps `f` into `(det - 1)`.
    pub fn check_invariant(&self, f: &Poly) -> Result<bool, SlnError> {
        for d in &self.derivations {
            if !self.normal_form(&d.apply(f)?)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn frobenius_matrix(&self) -> Vec<Vec<Poly>> {
        let p = self.p;
        self.vars.iter().map(|row| row.iter().map(|x| x.pow(p)).collect()).collect()
    }

    /// `s_i((x^p)) = s_i(x)^p` identically for `i < n`, and
    /// `det((x^p)) - 1` lies in `(det - 1)`.
    pub fn frobenius_relations(&self) -> Result<CheckReport, SlnError> {
        const NAME: &str = "frobenius_relations";
        let frob = self.frobenius_matrix();
        for i in 1..self.n {
            let lhs = principal_minor_sum(&frob, i, &self.ring);
            let rhs = self.exterior_trace(i)?.checked_pow(self.p)?;
            let diff = &lhs - &rhs;
            if !diff.is_zero() {
                return Ok(CheckReport::fail(NAME, format!("s{i}: {diff}")));
            }
        }
        let d = &poly_det(&frob, &self.ring) - &Poly::one(&self.ring);
        let r = self.normal_form(&d)?;
        if !r.is_zero() {
            return Ok(CheckReport::fail(NAME, format!("det: remainder {r}")));
        }
        Ok(CheckReport::pass(NAME))
    }

    /// Ring of the formal generators `z_ij` (standing for `x_ij^p`) and
    /// `t_1, ..., t_{n-1}` (standing for `s_i`), with the relations
    /// `R_i = s_i((z)) - t_i^p` for `i < n` and `R_n = det((z)) - 1`.
    pub fn frobenius_system(&self) -> Result<FrobeniusSystem, SlnError> {
        let n = self.n;
        let mut names: Vec<String> = (1..=n).flat_map(|i| (1..=n).map(move |j| format!("z{i}{j}"))).collect();
        names.extend((1..n).map(|i| format!("t{i}")));
        let ring = PolyRing::new(self.p as u64, names)?;
        let z: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| Poly::var(&ring, i * n + j)).collect()).collect();
        let mut relations = Vec::with_capacity(n);
        for i in 1..n {
            let t = Poly::var(&ring, n * n + i - 1).pow(self.p);
            relations.push(&principal_minor_sum(&z, i, &ring) - &t);
        }
        relations.push(&poly_det(&z, &ring) - &Poly::one(&ring));
        let last_column = (0..n).map(|i| i * n + n - 1).collect();
        Ok(FrobeniusSystem { n, ring, relations, last_column })
    }

    /// Each relation has joint degree at most 1 in `z_1n, ..., z_nn`.
    pub fn column_linearity(&self) -> Result<CheckReport, SlnError> {
        const NAME: &str = "column_linearity";
        let sys = self.frobenius_system()?;
        for (i, r) in sys.relations.iter().enumerate() {
            let deg = r.degree_in(&sys.last_column).unwrap_or(0);
            if deg > 1 {
                return Ok(CheckReport::fail(NAME, format!("R{}: degree {deg} in the last column: {r}", i + 1)));
            }
        }
        Ok(CheckReport::pass(NAME))
    }

    /// Writes the relations as `A (z_1n, ..., z_nn)^T = b` and solves by
    /// Cramer's rule. Passes when `det A != 0` and substituting
    /// `det A * z_kn = det A_k` back into every relation gives zero.
    pub fn eliminate_last_column(&self) -> Result<Elimination, SlnError> {
        const NAME: &str = "eliminate_last_column";
        let sys = self.frobenius_system()?;
        let n = self.n;
        let ring = &sys.ring;
        let mut a = vec![vec![Poly::zero(ring); n]; n];
        let mut b = vec![Poly::zero(ring); n];
        for (i, r) in sys.relations.iter().enumerate() {
            for (m, c) in r.terms() {
                let hits: Vec<usize> = (0..n).filter(|&k| m.exps()[sys.last_column[k]] > 0).collect();
                let term = Poly::one(ring).mul_term(m, c)?;
                match hits.as_slice() {
                    [] => b[i] = &b[i] - &term,
                    [k] if m.exps()[sys.last_column[*k]] == 1 => {
                        let mut e = m.exps().to_vec();
                        e[sys.last_column[*k]] = 0;
                        let coeff = Poly::from_terms(ring, [(e, c as i64)])?;
                        a[i][*k] = &a[i][*k] + &coeff;
                    }
                    _ => {
                        let report = CheckReport::fail(NAME, format!("R{} is not linear in the last column", i + 1));
                        return Ok(Elimination { a, b, det_a: Poly::zero(ring), numerators: vec![], surviving: vec![], report });
                    }
                }
            }
        }
        let det_a = poly_det(&a, ring);
        let numerators: Vec<Poly> = (0..n)
            .map(|k| {
                let ak: Vec<Vec<Poly>> = (0..n)
                    .map(|i| (0..n).map(|j| if j == k { b[i].clone() } else { a[i][j].clone() }).collect())
                    .collect();
                poly_det(&ak, ring)
            })
            .collect();
        let eliminated: Vec<&str> = sys.last_column.iter().map(|&v| ring.names()[v].as_str()).collect();
        let surviving: Vec<String> =
            ring.names().iter().filter(|s| !eliminated.contains(&s.as_str())).cloned().collect();

        let report = if det_a.is_zero() {
            CheckReport::fail(NAME, "det A = 0")
        } else {
            let mut bad = None;
            for i in 0..n {
                let mut lhs = Poly::zero(ring);
                for k in 0..n {
                    lhs = &lhs + &(&a[i][k] * &numerators[k]);
                }
                let resid = &lhs - &(&b[i] * &det_a);
                if !resid.is_zero() {
                    bad = Some(format!("row {}: {resid}", i + 1));
                    break;
                }
            }
            match bad {
                Some(w) => CheckReport::fail(NAME, w),
                None if surviving.len() != n * n - 1 => {
                    CheckReport::fail(NAME, format!("{} surviving generators", surviving.len()))
                }
                None => CheckReport::pass(NAME),
            }
        };
        Ok(Elimination { a, b, det_a, numerators, surviving, report })
    }

    fn nf_monomials(&self, d: u32) -> Vec<Monomial> {
        let nv = self.n * self.n;
        let diag: Vec<usize> = (0..self.n).map(|i| i * self.n + i).collect();
        let mut out = Vec::new();
        let mut exps = vec![0u16; nv];
        fn go(v: usize, left: u32, exps: &mut Vec<u16>, diag: &[usize], out: &mut Vec<Monomial>) {
            if v == exps.len() {
                if !diag.iter().all(|&k| exps[k] > 0) {
                    out.push(Monomial::new(exps.clone()));
                }
                return;
            }
            for e in 0..=left {
                exps[v] = e as u16;
                go(v + 1, left - e, exps, diag, out);
            }
            exps[v] = 0;
        }
        go(0, d, &mut exps, &diag, &mut out);
        out.sort();
        out
    }

    fn check_space_bounds(&self, d: u32) -> Result<(), SlnError> {
        let ok = match self.n {
            2 => d <= 10,
            3 => d <= 4,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(SlnError::Resource(format!("invariant space at n = {}, d = {d}", self.n)))
        }
    }

    fn coords(&self, f: &Poly, index: &HashMap<Monomial, usize>, len: usize) -> Vec<u32> {
        let mut v = vec![0u32; len];
        for (m, c) in f.terms() {
            v[index[m]] = c;
        }
        v
    }

    fn poly_of(&self, v: &[u32], monos: &[Monomial]) -> Poly {
        Poly::from_terms(&self.ring, v.iter().zip(monos).filter(|(&c, _)| c != 0).map(|(&c, m)| (m.exps().to_vec(), c as i64)))
            .expect("arity matches")
    }

    /// Joint kernel of the given derivations on the normal-form monomials of
    /// degree `<= d`, modulo `det - 1`.
    fn joint_kernel(&self, derivs: &[Derivation], d: u32) -> Result<GradedSpace, SlnError> {
        let monomials = self.nf_monomials(d);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let nb = monomials.len();
        let columns: Vec<Vec<Vec<u32>>> = monomials
            .par_iter()
            .map(|m| {
                let f = Poly::from_terms(&self.ring, [(m.exps().to_vec(), 1)])?;
                derivs
                    .iter()
                    .map(|dx| Ok(self.coords(&self.normal_form(&dx.apply(&f)?)?, &index, nb)))
                    .collect::<Result<Vec<_>, SlnError>>()
            })
            .collect::<Result<_, _>>()?;
        let mut mat = FpMatrix::zeros(self.p, derivs.len() * nb, nb);
        for (j, col) in columns.iter().enumerate() {
            for (x, img) in col.iter().enumerate() {
                for (r, &c) in img.iter().enumerate() {
                    if c != 0 {
                        mat.set(x * nb + r, j, c);
                    }
                }
            }
        }
        let basis = mat.kernel_basis();
        Ok(GradedSpace { d, monomials, basis })
    }

    /// `{f : deg f <= d, x . f in (det - 1) for every basis element x}`.
    pub fn invariant_space(&self, d: u32) -> Result<GradedSpace, SlnError> {
        self.check_space_bounds(d)?;
        self.joint_kernel(&self.derivations, d)
    }

    /// Products of `s_1, ..., s_{n-1}` and the `x_ij^p` of nominal degree
    /// `<= bound`, paired with their nominal degrees.
    fn generator_products(&self, bound: u32) -> Result<Vec<(u32, Poly)>, SlnError> {
        let mut gens: Vec<(u32, Poly)> =
            (1..self.n).map(|i| Ok((i as u32, self.exterior_trace(i)?))).collect::<Result<_, SlnError>>()?;
        for row in &self.vars {
            for x in row {
                gens.push((self.p, x.pow(self.p)));
            }
        }
        let mut out = vec![(0, Poly::one(&self.ring))];
        // multisets via nondecreasing generator index
        let mut frontier = vec![(0usize, 0u32, Poly::one(&self.ring))];
        while let Some((start, deg, f)) = frontier.pop() {
            for (g, (gd, gp)) in gens.iter().enumerate().skip(start) {
                let nd = deg + gd;
                if nd > bound {
                    continue;
                }
                let h = self.normal_form(&(&f * gp))?;
                out.push((nd, h.clone()));
                frontier.push((g, nd, h));
            }
        }
        Ok(out)
    }

    /// Dimension of `span_G ∩ W_e` for `e = 0..=d`, where `span_G` at level
    /// `e` is spanned by the generator products of nominal degree
    /// `<= e + slack`. Also returns a basis of the level-`d` space.
    fn span_dims(&self, d: u32, slack: u32) -> Result<(Vec<usize>, Vec<Poly>), SlnError> {
        let products = self.generator_products(d + slack)?;
        let mut monomials = self.nf_monomials(d + slack);
        monomials.reverse();
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let nb = monomials.len();
        let mut dims = Vec::with_capacity(d as usize + 1);
        let mut top = Vec::new();
        for e in 0..=d {
            let rows: Vec<Vec<u32>> = products
                .iter()
                .filter(|(nd, _)| *nd <= e + slack)
                .map(|(_, f)| self.coords(f, &index, nb))
                .collect();
            let (r, pivots) = FpMatrix::from_u32_rows(self.p, nb, rows).rref();
            let low: Vec<usize> =
                (0..pivots.len()).filter(|&i| monomials[pivots[i]].degree() <= e).collect();
            dims.push(low.len());
            if e == d {
                top = low.iter().map(|&i| self.poly_of(r.row(i), &monomials)).collect();
            }
        }
        Ok((dims, top))
    }

    /// Compares the span of products of `s_i` and `x_ij^p` with the invariant
    /// space at every filtration level `<= d`.
    pub fn donkin_check(&self, d: u32, slack: u32) -> Result<DonkinReport, SlnError> {
        const NAME: &str = "donkin_generation";
        if self.n != 2 || d > 8 {
            return Err(SlnError::Resource(format!("generation check at n = {}, d = {d}", self.n)));
        }
        if slack < self.n as u32 {
            return Err(SlnError::Resource(format!("slack {slack} below n = {}", self.n)));
        }
        let inv = self.invariant_space(d)?;
        let invariant_dims: Vec<usize> = (0..=d).map(|e| inv.dim_at_level(e)).collect();
        let (span_dims, top) = self.span_dims(d, slack)?;
        let (wider, _) = self.span_dims(d, slack + 1)?;
        let slack_stable = wider == span_dims;

        let mut containment = true;
        let mut witness = None;
        for f in &top {
            if !self.check_invariant(f)? {
                containment = false;
                witness = Some(format!("non-invariant element {f}"));
                break;
            }
        }
        if witness.is_none() {
            if let Some(e) = (0..=d as usize).find(|&e| span_dims[e] != invariant_dims[e]) {
                witness = Some(format!(
                    "level {e}: span dimension {} vs invariant dimension {}",
                    span_dims[e], invariant_dims[e]
                ));
            }
        }
        let report = match witness {
            None => CheckReport::pass(NAME),
            Some(w) => CheckReport::fail(NAME, w),
        };
        Ok(DonkinReport { d, slack, span_dims, invariant_dims, containment, slack_stable, report })
    }

    fn bracket(&self, a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let p = self.p as i64;
        let ab = matmul(a, b, p);
        let ba = matmul(b, a, p);
        ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).rem_euclid(p)).collect()).collect()
    }

    fn flatten(&self, m: &[Vec<i64>]) -> Vec<i64> {
        m.iter().flatten().copied().collect()
    }

    fn unflatten(&self, v: &[u32]) -> Vec<Vec<i64>> {
        v.chunks(self.n).map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }

    /// Semi-invariants are invariants: on the joint kernel `V` of a basis of
    /// `[g, g]`, every element of a complement acts nilpotently, so a joint
    /// eigenvector of `g` has weight zero on the complement and hence
    /// everywhere.
    pub fn semi_invariant_scan(&self, d: u32) -> Result<CheckReport, SlnError> {
        const NAME: &str = "semi_invariant_scan";
        if self.n != 2 || d > 6 {
            return Err(SlnError::Resource(format!("semi-invariant scan at n = {}, d = {d}", self.n)));
        }
        let nn = self.n * self.n;
        let p = self.p;
        let span_of = |ms: &[Vec<i64>]| FpMatrix::from_rows(p, nn, ms);

        let g: Vec<Vec<i64>> = self.lie_basis.iter().map(|x| self.flatten(&x.matrix)).collect();
        let mut brackets = Vec::new();
        for a in &self.lie_basis {
            for b in &self.lie_basis {
                brackets.push(self.flatten(&self.bracket(&a.matrix, &b.matrix)));
            }
        }
        let (rb, piv) = span_of(&brackets).rref();
        let derived: Vec<Vec<Vec<i64>>> = (0..piv.len()).map(|i| self.unflatten(rb.row(i))).collect();

        // Greedy complement of [g, g] inside g, taken from the basis.
        let mut current: Vec<Vec<i64>> = (0..piv.len()).map(|i| rb.row(i).iter().map(|&x| x as i64).collect()).collect();
        let mut complement = Vec::new();
        for (k, x) in g.iter().enumerate() {
            let mut trial = current.clone();
            trial.push(x.clone());
            if span_of(&trial).rank() > span_of(&current).rank() {
                current = trial;
                complement.push(k);
            }
        }
        if complement.is_empty() {
            return Ok(CheckReport::pass(NAME));
        }

        let derived_derivs: Vec<Derivation> =
            derived.iter().map(|x| self.conj_derivation(x)).collect::<Result<_, _>>()?;
        let v = self.joint_kernel(&derived_derivs, d)?;
        let index: HashMap<Monomial, usize> = v.monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let nb = v.monomials.len();

        for &k in &complement {
            let dx = &self.derivations[k];
            let mut current: Vec<Vec<u32>> = v.basis.clone();
            let mut last_dim = usize::MAX;
            loop {
                if current.is_empty() {
                    break;
                }
                if current.len() >= last_dim {
                    let f = self.poly_of(&current[0], &v.monomials);
                    return Ok(CheckReport::fail(
                        NAME,
                        format!("{} is not nilpotent on the derived invariants; stable element {f}", self.lie_basis[k].name),
                    ));
                }
                last_dim = current.len();
                let images: Vec<Vec<u32>> = current
                    .iter()
                    .map(|c| {
                        let f = self.poly_of(c, &v.monomials);
                        Ok(self.coords(&self.normal_form(&dx.apply(&f)?)?, &index, nb))
                    })
                    .collect::<Result<_, SlnError>>()?;
                let (r, piv) = FpMatrix::from_u32_rows(p, nb, images).rref();
                current = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
            }
        }
        Ok(CheckReport::pass(NAME))
    }

    /// `D_x(s_i) = 0`, `D_x(det) = 0` and `D_x(x_ij^p) = 0` identically for
    /// every basis element `x`.
    pub fn conjugation_invariance(&self) -> Result<CheckReport, SlnError> {
        const NAME: &str = "conjugation_invariance";
        let mut targets: Vec<(String, Poly)> =
            (1..self.n).map(|i| Ok((format!("s{i}"), self.exterior_trace(i)?))).collect::<Result<_, SlnError>>()?;
        targets.push(("det".into(), self.det.clone()));
        for i in 1..=self.n {
            for j in 1..=self.n {
                targets.push((format!("x{i}{j}^p"), self.var(i, j).pow(self.p)));
            }
        }
        for (x, dx) in self.lie_basis.iter().zip(&self.derivations) {
            for (name, f) in &targets {
                let img = dx.apply(f)?;
                if !img.is_zero() {
                    return Ok(CheckReport::fail(NAME, format!("D_{}({name}) = {img}", x.name)));
                }
            }
        }
        Ok(CheckReport::pass(NAME))
    }
}

/// The relation polynomials in the formal generators.
pub struct FrobeniusSystem {
    pub n: usize,
    pub ring: Arc<PolyRing>,
    pub relations: Vec<Poly>,
    /// Variable indices of `z_1n, ..., z_nn`.
    pub last_column: Vec<usize>,
}

pub struct Elimination {
    pub a: Vec<Vec<Poly>>,
    pub b: Vec<Poly>,
    pub det_a: Poly,
    /// `det A_k`, so that `z_kn = numerators[k] / det_a`.
    pub numerators: Vec<Poly>,
    /// Generators left after eliminating the last column.
    pub surviving: Vec<String>,
    pub report: CheckReport,
}

/// A subspace of the normal-form polynomials of degree `<= d`, stored as
/// coordinate vectors over `monomials` (increasing grlex).
#[derive(Clone, Debug)]
pub struct GradedSpace {
    pub d: u32,
    pub monomials: Vec<Monomial>,
    pub basis: Vec<Vec<u32>>,
}

impl GradedSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the intersection with polynomials of degree `<= e`.
    /// Relies on each basis vector having a distinct leading monomial, which
    /// holds for kernel bases read off a reduced echelon form.
    pub fn dim_at_level(&self, e: u32) -> usize {
        self.basis
            .iter()
            .filter(|v| match v.iter().rposition(|&c| c != 0) {
                Some(k) => self.monomials[k].degree() <= e,
                None => true,
            })
            .count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DonkinReport {
    pub d: u32,
    pub slack: u32,
    pub span_dims: Vec<usize>,
    pub invariant_dims: Vec<usize>,
    pub containment: bool,
    /// Whether `slack + 1` gives the same dimensions.
    pub slack_stable: bool,
    pub report: CheckReport,
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn raw_poly(nv: usize) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
        prop::collection::vec((prop::collection::vec(0u16..=2, nv), -4i64..=4), 0..5)
    }

    fn case() -> impl Strategy<Value = (usize, u64)> {
        (2usize..=3, prop::sample::select(vec![2u64, 3, 5]))
    }

    #[test]
    fn ideal_is_stable_and_invariants_are_killed() {
        for n in 2..=3 {
            for p in [2, 3, 5] {
                let c = SlnContext::new(n, p).unwrap();
                let traces: Vec<Poly> = (1..n).map(|i| c.exterior_trace(i).unwrap()).collect();
                for dx in c.basis_derivations() {
                    assert!(c.normal_form(&dx.apply(c.relation()).unwrap()).unwrap().is_zero());
                    assert!(dx.apply(c.det()).unwrap().is_zero());
                    for s in &traces {
                        assert!(dx.apply(s).unwrap().is_zero());
                    }
                    for i in 1..=n {
                        for j in 1..=n {
                            assert!(dx.apply(&c.var(i, j).pow(p as u32)).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invariant_dims_are_monotone() {
        for (n, p, top) in [(2, 2, 6), (2, 3, 6), (2, 5, 5), (3, 2, 3), (3, 3, 3)] {
            let c = SlnContext::new(n, p).unwrap();
            let dims: Vec<usize> = (0..=top).map(|d| c.invariant_space(d).unwrap().dim()).collect();
            assert!(dims.windows(2).all(|w| w[0] <= w[1]), "n={n} p={p}: {dims:?}");
            // the filtration read off the largest space agrees with each truncation
            let big = c.invariant_space(top).unwrap();
            for (d, &dim) in dims.iter().enumerate() {
                assert_eq!(big.dim_at_level(d as u32), dim, "n={n} p={p} d={d}");
            }
        }
    }

    #[test]
    fn generated_spans_are_nested() {
        for p in [2, 3] {
            let c = SlnContext::new(2, p).unwrap();
            let (_, wide) = c.span_dims(5, 2).unwrap();
            let monos = c.nf_monomials(5);
            let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let rows = |fs: &[Poly]| -> Vec<Vec<u32>> { fs.iter().map(|f| c.coords(f, &index, monos.len())).collect() };
            let base = FpMatrix::from_u32_rows(c.p(), monos.len(), rows(&wide)).rank();
            for d in 0..5 {
                let (_, narrow) = c.span_dims(d, 2).unwrap();
                let mut all = rows(&wide);
                all.extend(rows(&narrow));
                assert_eq!(FpMatrix::from_u32_rows(c.p(), monos.len(), all).rank(), base, "p={p} d={d}");
            }
        }
    }

    /// Evaluates at points where `det A` is nonzero, solves for the last
    /// column numerically and plugs it into the relations.
    #[test]
    fn elimination_solves_relations_pointwise() {
        for n in 2..=3 {
            for p in [2u64, 3] {
                let c = SlnContext::new(n, p).unwrap();
                let sys = c.frobenius_system().unwrap();
                let el = c.eliminate_last_column().unwrap();
                assert!(el.report.passed(), "{}", el.report);
                let nv = sys.ring.nvars();
                let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64 * 31 + p);
                let mut hits = 0;
                for _ in 0..2000 {
                    let pt: Vec<u32> = (0..nv)
                        .map(|_| {
                            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            ((state >> 33) % p) as u32
                        })
                        .collect();
                    let da = el.det_a.eval(&pt);
                    if da == 0 {
                        continue;
                    }
                    hits += 1;
                    let inv = crate::polyfp::inv_mod(da, p as u32) as u64;
                    let mut solved = pt.clone();
                    for (k, &v) in sys.last_column.iter().enumerate() {
                        solved[v] = (el.numerators[k].eval(&pt) as u64 * inv % p) as u32;
                    }
                    for r in &sys.relations {
                        assert_eq!(r.eval(&solved), 0, "n={n} p={p} at {pt:?}");
                    }
                }
                assert!(hits > 0, "n={n} p={p}: det A vanished at every sample");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn leibniz_survives_reduction(
            (n, p) in case(),
            f in raw_poly(9), g in raw_poly(9), k in 0usize..8,
        ) {
            let c = SlnContext::new(n, p).unwrap();
            let nv = n * n;
            let trim = |t: Vec<(Vec<u16>, i64)>| -> Poly {
                Poly::from_terms(c.ring(), t.into_iter().map(|(e, a)| (e[..nv].to_vec(), a))).unwrap()
            };
            let (f, g) = (trim(f), trim(g));
            let dx = &c.basis_derivations()[k % (nv - 1)];
            let nf = |h: &Poly| c.normal_form(h).unwrap();
            let lhs = nf(&dx.apply(&(&f * &g)).unwrap());
            let rhs = nf(&(&(&f * &dx.apply(&g).unwrap()) + &(&g * &dx.apply(&f).unwrap())));
            prop_assert_eq!(&lhs, &rhs);
            // reducing first changes nothing modulo the ideal
            let lhs2 = nf(&dx.apply(&(&nf(&f) * &nf(&g))).unwrap());
            prop_assert_eq!(lhs2, rhs);
        }
    }
}
