use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;

use super::DatumError;

/// Supported Cartan types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Kind {
    #[serde(rename = "finite")]
    Finite,
    #[serde(rename = "affine")]
    AffineUntwisted,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Finite => write!(f, "finite"),
            Kind::AffineUntwisted => write!(f, "affine"),
        }
    }
}

/// A symmetrizable generalized Cartan matrix `a_ij = ⟨α_i^∨, α_j⟩`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    n: usize,
    a: Vec<i64>,
}

impl fmt::Debug for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, DatumError> {
        let n = rows.len();
        if n == 0 {
            return Err(DatumError::NotGcm("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(DatumError::NotGcm("matrix is not square".into()));
        }
        let a: Vec<i64> = rows.into_iter().flatten().collect();
        let m = CartanMatrix { n, a };
        for i in 0..n {
            if m.get(i, i) != 2 {
                return Err(DatumError::NotGcm(format!("diagonal entry a[{i}][{i}] != 2")));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if m.get(i, j) > 0 {
                    return Err(DatumError::NotGcm(format!("positive off-diagonal entry a[{i}][{j}]")));
                }
                if (m.get(i, j) == 0) != (m.get(j, i) == 0) {
                    return Err(DatumError::NotGcm(format!(
                        "zero pattern not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        if m.symmetrizer().is_none() {
            return Err(DatumError::NotSymmetrizable);
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Positive rationals `d_i = num/den` with `d_i a_ij = d_j a_ji`.
    pub fn symmetrizer(&self) -> Option<Vec<(i64, i64)>> {
        let n = self.n;
        let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some((1, 1));
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let (pi, qi) = d[i].unwrap();
                for j in 0..n {
                    if i == j || self.get(i, j) == 0 {
                        continue;
                    }
                    // d_j = d_i · a_ij / a_ji
                    let (mut p, mut q) = (pi * self.get(i, j), qi * self.get(j, i));
                    if q < 0 {
                        p = -p;
                        q = -q;
                    }
                    let g = p.gcd(&q);
                    let cand = (p / g, q / g);
                    match d[j] {
                        None => {
                            d[j] = Some(cand);
                            queue.push_back(j);
                        }
                        Some(existing) if existing != cand => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        d.into_iter().collect()
    }

    /// Determinant of the principal submatrix on `nodes`.
    pub fn principal_minor(&self, nodes: &[usize]) -> i64 {
        let k = nodes.len();
        if k == 0 {
            return 1;
        }
        let mut m: Vec<i128> = Vec::with_capacity(k * k);
        for &i in nodes {
            for &j in nodes {
                m.push(self.get(i, j) as i128);
            }
        }
        bareiss_det(&mut m, k) as i64
    }

    pub fn determinant(&self) -> i64 {
        let all: Vec<usize> = (0..self.n).collect();
        self.principal_minor(&all)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = self.rows();
        integer_rank(&rows)
    }

    pub fn restrict(&self, nodes: &[usize]) -> CartanMatrix {
        let rows = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        CartanMatrix::new(rows).expect("principal submatrix of a GCM is a GCM")
    }

    fn all_principal_minors_positive(&self, exclude_full: bool) -> bool {
        let n = self.n;
        for mask in 1u32..(1u32 << n) {
            if exclude_full && mask == (1u32 << n) - 1 {
                continue;
            }
            let nodes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if self.principal_minor(&nodes) <= 0 {
                return false;
            }
        }
        true
    }

    /// Finite when every principal minor is positive; untwisted affine when
    /// the determinant vanishes, proper principal minors are positive, and
    /// node 0 is the standard affinization of the finite matrix on the
    /// remaining nodes.
    pub fn classify(&self) -> Result<Kind, DatumError> {
        if self.n > 16 {
            return Err(DatumError::Unsupported("rank above 16".into()));
        }
        if self.all_principal_minors_positive(false) {
            return Ok(Kind::Finite);
        }
        if self.n >= 2 && self.determinant() == 0 && self.all_principal_minors_positive(true) {
            self.affinization_data()?;
            return Ok(Kind::AffineUntwisted);
        }
        Err(DatumError::Unsupported(
            "indefinite or non-standard Cartan matrix; only finite and untwisted affine types are supported".into(),
        ))
    }

    /// For an affine matrix with affine node 0: `(θ, θ^∨)` in simple
    /// (co)root coordinates over nodes `1..n`, after checking that row and
    /// column 0 are the untwisted affinization.
    pub(crate) fn affinization_data(&self) -> Result<(Vec<i64>, Vec<i64>), DatumError> {
        let nodes: Vec<usize> = (1..self.n).collect();
        let fin = self.restrict(&nodes);
        if !fin.all_principal_minors_positive(false) {
            return Err(DatumError::Unsupported(
                "affine node must be index 0 with a finite complement".into(),
            ));
        }
        let roots = fin.finite_positive_roots();
        let theta = roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .cloned()
            .expect("nonempty root system");
        let theta_co = fin.coroot_of(&theta).expect("θ is a real root");
        let m = self.n - 1;
        for i in 0..m {
            let pair: i64 = (0..m).map(|j| fin.get(i, j) * theta[j]).sum();
            if self.get(i + 1, 0) != -pair {
                return Err(DatumError::Unsupported(
                    "not an untwisted affinization (column 0 mismatch)".into(),
                ));
            }
            let pair_co: i64 = (0..m).map(|k| theta_co[k] * fin.get(k, i)).sum();
            if self.get(0, i + 1) != -pair_co {
                return Err(DatumError::Unsupported(
                    "not an untwisted affinization (row 0 mismatch)".into(),
                ));
            }
        }
        Ok((theta, theta_co))
    }

    /// `s_i(β) = β − ⟨α_i^∨, β⟩ α_i` in simple-root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &mut [i64]) {
        let p: i64 = (0..self.n).map(|j| self.get(i, j) * beta[j]).sum();
        beta[i] -= p;
    }

    /// `s_i(h) = h − ⟨h, α_i⟩ α_i^∨` in simple-coroot coordinates.
    pub fn reflect_coroot(&self, i: usize, h: &mut [i64]) {
        let p: i64 = (0..self.n).map(|k| h[k] * self.get(k, i)).sum();
        h[i] -= p;
    }

    /// Writes a real root as `β = ±u(α_j)`, returning `(sign, word of u, j)`,
    /// or `None` when `β` is not a real root.
    pub fn descend_root(&self, beta: &[i64]) -> Option<(i64, Vec<usize>, usize)> {
        if beta.iter().all(|&x| x == 0) {
            return None;
        }
        let sign = if beta.iter().all(|&x| x >= 0) {
            1
        } else if beta.iter().all(|&x| x <= 0) {
            -1
        } else {
            return None;
        };
        let mut b: Vec<i64> = beta.iter().map(|x| x * sign).collect();
        let mut word = Vec::new();
        loop {
            let height: i64 = b.iter().sum();
            if height == 1 {
                let j = b.iter().position(|&x| x == 1)?;
                return Some((sign, word, j));
            }
            let i = (0..self.n).find(|&i| {
                (0..self.n).map(|j| self.get(i, j) * b[j]).sum::<i64>() > 0
            })?;
            self.reflect_root(i, &mut b);
            if b.iter().any(|&x| x < 0) {
                return None;
            }
            word.push(i);
        }
    }

    /// Coroot of a real root, in simple-coroot coordinates.
    pub fn coroot_of(&self, beta: &[i64]) -> Option<Vec<i64>> {
        let (sign, word, j) = self.descend_root(beta)?;
        let mut h = vec![0; self.n];
        h[j] = 1;
        for &i in word.iter().rev() {
            self.reflect_coroot(i, &mut h);
        }
        Some(h.into_iter().map(|x| x * sign).collect())
    }

    /// All positive roots (simple coordinates) of a finite-type matrix.
    pub fn finite_positive_roots(&self) -> Vec<Vec<i64>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for j in 0..self.n {
            let mut e = vec![0; self.n];
            e[j] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..self.n {
                let mut c = b.clone();
                self.reflect_root(i, &mut c);
                if c.iter().all(|&x| x >= 0) && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
        out.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
        out
    }

    /// Named presets: `A1`, `A2`, `B2`, `G2`, `A1aff`, `A2aff`.
    pub fn preset(name: &str) -> Option<CartanMatrix> {
        let rows: Vec<Vec<i64>> = match name {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "B2" => vec![vec![2, -1], vec![-2, 2]],
            "G2" => vec![vec![2, -3], vec![-1, 2]],
            "A1aff" => vec![vec![2, -2], vec![-2, 2]],
            "A2aff" => vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            _ => return None,
        };
        Some(CartanMatrix::new(rows).expect("preset is a GCM"))
    }
}

pub const PRESETS: [&str; 6] = ["A1", "A2", "B2", "G2", "A1aff", "A2aff"];

fn bareiss_det(m: &mut [i128], k: usize) -> i128 {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..k {
        if m[c * k + c] == 0 {
            let Some(r) = (c + 1..k).find(|&r| m[r * k + c] != 0) else {
                return 0;
            };
            for j in 0..k {
                m.swap(c * k + j, r * k + j);
            }
            sign = -sign;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                m[i * k + j] = (m[i * k + j] * m[c * k + c] - m[i * k + c] * m[c * k + j]) / prev;
            }
        }
        prev = m[c * k + c];
    }
    sign * m[k * k - 1]
}

/// Rank over ℚ of an integer matrix given by rows.
pub(crate) fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for j in 0..cols {
                    m[r][j] = m[r][j] * a - m[rank][j] * b;
                }
                let g = m[r].iter().fold(0i128, |g, &x| g.gcd(&x));
                if g > 1 {
                    for x in m[r].iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        let a1 = CartanMatrix::new(vec![vec![2]]).unwrap();
        assert_eq!(a1.classify().unwrap(), Kind::Finite);
        let a2 = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.classify().unwrap(), Kind::Finite);
        let aff = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(aff.determinant(), 0);
        assert_eq!(aff.classify().unwrap(), Kind::AffineUntwisted);
        for p in ["B2", "G2"] {
            assert_eq!(CartanMatrix::preset(p).unwrap().classify().unwrap(), Kind::Finite);
        }
        assert_eq!(
            CartanMatrix::preset("A2aff").unwrap().classify().unwrap(),
            Kind::AffineUntwisted
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            CartanMatrix::new(vec![vec![2, 1], vec![-1, 2]]),
            Err(DatumError::NotGcm(_))
        ));
        assert!(matches!(
            CartanMatrix::new(vec![vec![2, 0], vec![-1, 2]]),
            Err(DatumError::NotGcm(_))
        ));
        assert!(matches!(
            CartanMatrix::new(vec![vec![3]]),
            Err(DatumError::NotGcm(_))
        ));
        // hyperbolic
        let hyp = CartanMatrix::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert!(matches!(hyp.classify(), Err(DatumError::Unsupported(_))));
        // twisted affine A2^(2)
        let tw = CartanMatrix::new(vec![vec![2, -4], vec![-1, 2]]).unwrap();
        assert!(matches!(tw.classify(), Err(DatumError::Unsupported(_))));
        // a non-symmetrizable 3-cycle
        let ns = CartanMatrix::new(vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]]);
        assert!(matches!(ns, Err(DatumError::NotSymmetrizable)));
    }

    #[test]
    fn finite_root_counts() {
        let counts = [("A1", 1), ("A2", 3), ("B2", 4), ("G2", 6)];
        for (name, c) in counts {
            assert_eq!(CartanMatrix::preset(name).unwrap().finite_positive_roots().len(), c, "{name}");
        }
    }

    #[test]
    fn highest_root_and_coroot() {
        let g2 = CartanMatrix::preset("G2").unwrap();
        let roots = g2.finite_positive_roots();
        let theta = roots.last().unwrap();
        // α_1 short, α_2 long: θ = 3α_1 + 2α_2
        assert_eq!(theta, &vec![3, 2]);
        // θ is long, its coroot is α_1^∨ + 2α_2^∨
        assert_eq!(g2.coroot_of(theta).unwrap(), vec![1, 2]);
        assert!(g2.descend_root(&[1, 1]).is_some());
        assert!(g2.descend_root(&[2, 0]).is_none());
        assert!(g2.descend_root(&[1, -1]).is_none());
    }
}
