//! Cartan matrices of finite type: Bourbaki tables, Dynkin classification and
//! reflection closure.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::RootDataError;
use crate::intlat::IntMatrix;

/// Closure larger than this means the Cartan matrix is not of finite type
/// (the largest irreducible system, `E_8`, has 240 roots).
pub const MAX_CLOSURE_ROOTS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Self {
        Self { family, rank }
    }

    pub fn is_valid(&self) -> bool {
        match self.family {
            Family::A | Family::B | Family::C => self.rank >= 1,
            Family::D => self.rank >= 2,
            Family::E => (6..=8).contains(&self.rank),
            Family::F => self.rank == 4,
            Family::G => self.rank == 2,
        }
    }

    /// `|P / Q|` for the irreducible type.
    pub fn connection_index(&self) -> u64 {
        match (self.family, self.rank) {
            (Family::A, n) => n as u64 + 1,
            (Family::B | Family::C, 1) => 2,
            (Family::B | Family::C, _) => 2,
            (Family::D, _) => 4,
            (Family::E, 6) => 3,
            (Family::E, 7) => 2,
            _ => 1,
        }
    }

    /// Number of roots of the irreducible type.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Bourbaki-numbered Cartan matrix with `(i, j) = <alpha_i, alpha_j^vee>`.
/// `D_2` is `A_1 x A_1` and `D_3` is `A_3` with the branch node first.
pub fn cartan_matrix(t: DynkinType) -> Result<IntMatrix, RootDataError> {
    if !t.is_valid() {
        return Err(RootDataError::BadParameter(format!("no root system of type {t}")));
    }
    let n = t.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut bond = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t.family {
        Family::A | Family::B | Family::C => {
            for i in 1..n {
                bond(i - 1, i);
            }
        }
        Family::D => {
            for i in 1..n.saturating_sub(1) {
                bond(i - 1, i);
            }
            if n >= 3 {
                bond(n - 3, n - 1);
            }
        }
        Family::E => {
            // 1-3-4-5-6(-7-8), node 2 on node 4
            bond(0, 2);
            bond(1, 3);
            for i in 3..n {
                bond(i - 1, i);
            }
        }
        Family::F => {
            bond(0, 1);
            bond(1, 2);
            bond(2, 3);
        }
        Family::G => bond(0, 1),
    }
    match t.family {
        // alpha_n short
        Family::B if n >= 2 => c[n - 2][n - 1] = -2,
        // alpha_n long
        Family::C if n >= 2 => c[n - 1][n - 2] = -2,
        Family::F => c[1][2] = -2,
        Family::G => c[1][0] = -3,
        _ => {}
    }
    Ok(IntMatrix::from_rows_with_cols(&c, n))
}

fn entry(c: &IntMatrix, i: usize, j: usize) -> i64 {
    c[(i, j)].to_i64().expect("Cartan entries are small")
}

/// Connected components of the Dynkin graph, each sorted, ordered by
/// smallest node.
pub(crate) fn connected_components(c: &IntMatrix) -> Vec<Vec<usize>> {
    let n = c.rows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && j != i && (entry(c, i, j) != 0 || entry(c, j, i) != 0) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Classifies the connected sub-diagram on `nodes`.
///
/// B versus C is read off the arrow: `<alpha_i, alpha_j^vee> = -2` means
/// `alpha_i` is the long root. A rank-2 double bond is returned as `C_2`.
pub(crate) fn classify(c: &IntMatrix, nodes: &[usize]) -> Result<DynkinType, RootDataError> {
    let m = nodes.len();
    let bad = |why: &str| RootDataError::NotFiniteType(format!("{why} on nodes {nodes:?}"));
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut doubles = Vec::new();
    let mut triple = false;
    for a in 0..m {
        if entry(c, nodes[a], nodes[a]) != 2 {
            return Err(bad("diagonal entry is not 2"));
        }
        for b in a + 1..m {
            let (x, y) = (entry(c, nodes[a], nodes[b]), entry(c, nodes[b], nodes[a]));
            if x == 0 && y == 0 {
                continue;
            }
            if x >= 0 || y >= 0 {
                return Err(bad("off-diagonal entries must be both zero or both negative"));
            }
            match x * y {
                1 => {}
                2 => doubles.push((a, b)),
                3 => triple = true,
                _ => return Err(bad("bond multiplicity above 3")),
            }
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edges + 1 != m {
        return Err(bad("Dynkin graph has a cycle"));
    }
    if m == 1 {
        return Ok(DynkinType::new(Family::A, 1));
    }
    if triple {
        return if m == 2 { Ok(DynkinType::new(Family::G, 2)) } else { Err(bad("triple bond in rank > 2")) };
    }
    let max_deg = adj.iter().map(Vec::len).max().unwrap_or(0);

    match doubles.len() {
        0 => {}
        1 => {
            if max_deg > 2 {
                return Err(bad("branched diagram with a double bond"));
            }
            if m == 2 {
                return Ok(DynkinType::new(Family::C, 2));
            }
            let path = walk_path(&adj);
            let pos = |v: usize| path.iter().position(|&x| x == v).unwrap();
            let (a, b) = doubles[0];
            let (lo, hi) = if pos(a) < pos(b) { (a, b) } else { (b, a) };
            let k = pos(lo);
            if m == 4 && k == 1 {
                return Ok(DynkinType::new(Family::F, 4));
            }
            let (end, inner) = if k == 0 {
                (lo, hi)
            } else if k == m - 2 {
                (hi, lo)
            } else {
                return Err(bad("double bond in the middle of the diagram"));
            };
            let family =
                if entry(c, nodes[end], nodes[inner]) == -2 { Family::C } else { Family::B };
            return Ok(DynkinType::new(family, m));
        }
        _ => return Err(bad("more than one double bond")),
    }

    if max_deg <= 2 {
        return Ok(DynkinType::new(Family::A, m));
    }
    let branch: Vec<usize> = (0..m).filter(|&v| adj[v].len() >= 3).collect();
    if branch.len() != 1 || adj[branch[0]].len() != 3 {
        return Err(bad("diagram with several branch points"));
    }
    let centre = branch[0];
    let mut arms: Vec<usize> = adj[centre]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (centre, start, 1);
            loop {
                let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
                match next.as_slice() {
                    [] => return len,
                    [x] => {
                        prev = cur;
                        cur = *x;
                        len += 1;
                    }
                    _ => unreachable!("single branch point"),
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Ok(DynkinType::new(Family::D, m)),
        [1, 2, 2] => Ok(DynkinType::new(Family::E, 6)),
        [1, 2, 3] => Ok(DynkinType::new(Family::E, 7)),
        [1, 2, 4] => Ok(DynkinType::new(Family::E, 8)),
        _ => Err(bad("branched diagram not of type D or E")),
    }
}

fn walk_path(adj: &[Vec<usize>]) -> Vec<usize> {
    let start = (0..adj.len()).find(|&v| adj[v].len() <= 1).unwrap_or(0);
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    path
}

/// Full root system generated from a Cartan matrix.
///
/// `roots[k]` is in simple-root coordinates and `coroots[k]` in
/// simple-coroot coordinates, so `<roots[k], coroots[l]>` is
/// `roots[k]^T * C * coroots[l]`. Positive roots come first, ordered by
/// height then coordinates, followed by their negatives in the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub cartan: IntMatrix,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
}

/// Closes the simple roots under the simple reflections
/// `s_i(beta) = beta - <beta, alpha_i^vee> alpha_i`, carrying coroots along
/// with the dual reflection.
pub fn roots_from_cartan(c: &IntMatrix) -> Result<RootSystem, RootDataError> {
    let n = c.rows();
    if !c.is_square() {
        return Err(RootDataError::NotFiniteType("Cartan matrix is not square".into()));
    }
    let cm: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| entry(c, i, j)).collect()).collect();

    let mut found: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        for sign in [1, -1] {
            let mut e = vec![0; n];
            e[i] = sign;
            found.insert(e.clone(), e.clone());
            queue.push_back(e);
        }
    }
    while let Some(beta) = queue.pop_front() {
        let beta_co = found[&beta].clone();
        for i in 0..n {
            // <beta, alpha_i^vee> = sum_j beta_j C[j][i]
            let k: i64 = (0..n).map(|j| beta[j] * cm[j][i]).sum();
            // <alpha_i, beta^vee> = sum_j C[i][j] beta^vee_j
            let kc: i64 = (0..n).map(|j| cm[i][j] * beta_co[j]).sum();
            let mut image = beta.clone();
            image[i] -= k;
            if found.contains_key(&image) {
                continue;
            }
            let mut image_co = beta_co.clone();
            image_co[i] -= kc;
            found.insert(image.clone(), image_co);
            if found.len() > MAX_CLOSURE_ROOTS {
                return Err(RootDataError::ClosureBound(MAX_CLOSURE_ROOTS));
            }
            queue.push_back(image);
        }
    }

    let mut positive: Vec<Vec<i64>> = found.keys().filter(|r| r.iter().all(|&x| x >= 0)).cloned().collect();
    if positive.len() * 2 != found.len() {
        return Err(RootDataError::NotFiniteType("closure contains roots of mixed sign".into()));
    }
    positive.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let negative: Vec<Vec<i64>> = positive.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let roots: Vec<Vec<i64>> = positive.into_iter().chain(negative).collect();
    let coroots = roots.iter().map(|r| found[r].clone()).collect();
    Ok(RootSystem { cartan: c.clone(), roots, coroots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<DynkinType> {
        let mut v = Vec::new();
        for n in 1..=7 {
            v.push(DynkinType::new(Family::A, n));
        }
        for n in 2..=6 {
            v.push(DynkinType::new(Family::B, n));
            v.push(DynkinType::new(Family::C, n));
        }
        for n in 4..=7 {
            v.push(DynkinType::new(Family::D, n));
        }
        for n in 6..=8 {
            v.push(DynkinType::new(Family::E, n));
        }
        v.push(DynkinType::new(Family::F, 4));
        v.push(DynkinType::new(Family::G, 2));
        v
    }

    #[test]
    fn tables_classify_to_themselves() {
        for t in all_types() {
            let c = cartan_matrix(t).unwrap();
            let nodes: Vec<usize> = (0..t.rank).collect();
            assert_eq!(connected_components(&c).len(), 1, "{t}");
            let got = classify(&c, &nodes).unwrap();
            // B_2 and C_2 share a diagram
            if t == DynkinType::new(Family::B, 2) {
                assert_eq!(got, DynkinType::new(Family::C, 2));
            } else {
                assert_eq!(got, t);
            }
        }
    }

    #[test]
    fn classification_survives_relabelling() {
        // C_3 with nodes listed in reverse order
        let c = cartan_matrix(DynkinType::new(Family::C, 3)).unwrap();
        let perm = [2, 1, 0];
        let mut p = IntMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                p[(i, j)] = c[(perm[i], perm[j])].clone();
            }
        }
        assert_eq!(classify(&p, &[0, 1, 2]).unwrap(), DynkinType::new(Family::C, 3));
    }

    #[test]
    fn affine_and_hyperbolic_are_rejected() {
        let a1_affine = IntMatrix::from_rows(&[[2, -2], [-2, 2]]);
        assert!(classify(&a1_affine, &[0, 1]).is_err());
        let a2_affine = IntMatrix::from_rows(&[[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]);
        assert!(classify(&a2_affine, &[0, 1, 2]).is_err());
        assert!(matches!(roots_from_cartan(&a2_affine), Err(RootDataError::ClosureBound(_))));
    }

    #[test]
    fn closure_counts() {
        let r = roots_from_cartan(&IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(r.roots, vec![vec![1], vec![-1]]);
        for t in all_types() {
            let r = roots_from_cartan(&cartan_matrix(t).unwrap()).unwrap();
            assert_eq!(r.roots.len(), t.root_count(), "{t}");
        }
    }

    #[test]
    fn closure_pairs_are_dual() {
        for t in all_types() {
            let c = cartan_matrix(t).unwrap();
            let r = roots_from_cartan(&c).unwrap();
            let n = t.rank;
            for (a, ac) in r.roots.iter().zip(&r.coroots) {
                let mut v = 0;
                for i in 0..n {
                    for j in 0..n {
                        v += a[i] * entry(&c, i, j) * ac[j];
                    }
                }
                assert_eq!(v, 2, "{t}: {a:?}");
            }
        }
    }

    #[test]
    fn invalid_types() {
        assert!(cartan_matrix(DynkinType::new(Family::E, 5)).is_err());
        assert!(cartan_matrix(DynkinType::new(Family::G, 3)).is_err());
        assert!(cartan_matrix(DynkinType::new(Family::D, 1)).is_err());
    }
}
